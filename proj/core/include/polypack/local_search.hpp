#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polypack/greedy.hpp"
#include "polypack/packing.hpp"
#include "polypack/rng.hpp"

namespace polypack {

struct LsConfig {
    double time_limit_seconds = 0.0;  // 0 = no wall-clock limit
    std::int64_t iteration_budget = 0; // 0 = no logical budget; tests use this
    double p_fill = 0.5;               // probability of fill over dig
    std::optional<Coord> dig_radius;   // restrict pushing to items near v
    std::optional<int> dig_max_items;  // ... or to the nearest k items
    int fill_tries = 32;               // grid points probed around v per unpacked copy
    double p_vertex_dig = 0.5;         // dig point is a container vertex with this probability
    std::uint64_t seed = 1;
};

struct TraceEntry {
    double elapsed_seconds = 0.0;
    std::int64_t iteration = 0;
    std::int64_t best_value = 0;
};

// Greedy re-insertion of unpacked copies over the full position list.
// Returns the value gained; the state stays feasible.
std::int64_t fill(PackingState& state, const PositionList& positions, const GreedyConfig& greedy,
                  Rng& rng);

// Pushes packed items away from v (farthest centroid first), then refills
// around v, allowing replacements whose value benefit is non-negative.
// Returns the net value change (>= 0).
std::int64_t dig(PackingState& state, Point v, const LsConfig& cfg, const PositionList& positions,
                 const GreedyConfig& greedy, Rng& rng);

// Randomly interleaves fill and dig until the time limit or iteration budget
// runs out; returns the best solution seen. The value never decreases.
Solution optimize(PackingState& state, const LsConfig& cfg, const PositionList& positions,
                  const GreedyConfig& greedy, std::vector<TraceEntry>* trace = nullptr);

} // namespace polypack
