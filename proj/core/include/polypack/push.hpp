#pragma once

#include <cstdint>
#include <span>

#include "polypack/packing.hpp"

namespace polypack {

struct PushConfig {
    int alpha_min = -8;
    int alpha_max = 8;
    // Consecutive fruitless directions before the push ends. 17 is one full
    // alpha sweep (0, +-1, ..., +-8) without progress.
    int max_stall_directions = 17;
    // Safety ceiling shared by one push call; exceeding it is a bug.
    std::int64_t max_iterations = 1 << 20;
};

struct PushStats {
    std::int64_t iterations = 0;
    int accepted_moves = 0;
    bool hit_ceiling = false;
};

// Translates the placement as far as possible along the ray through its
// position in direction v, by power-of-two jumps with rounding restarts.
// The governing direction u controls the negative-dot abort; the plain
// overload governs with v itself. Mutates the state; returns the final
// (always valid) position.
Point max_translate(PackingState& state, int id, Vector v);
Point max_translate(PackingState& state, int id, Vector v, Vector u);

// Repeatedly translates along v = u + alpha * u' (alpha cycling 0, +1, -1,
// ...), accepting only moves that strictly increase the position's dot
// product with u. Returns the final position.
Point push(PackingState& state, int id, Vector u, const PushConfig& cfg = {},
           PushStats* stats = nullptr);

// Rigid-group variants: all placements translate together, keeping their
// relative offsets (used for packed clusters). The returned point is the
// final position of ids[0].
Point max_translate_group(PackingState& state, std::span<const int> ids, Vector v, Vector u);
Point push_group(PackingState& state, std::span<const int> ids, Vector u,
                 const PushConfig& cfg = {}, PushStats* stats = nullptr);

} // namespace polypack
