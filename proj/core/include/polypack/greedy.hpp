#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polypack/packing.hpp"
#include "polypack/push.hpp"
#include "polypack/rng.hpp"

namespace polypack {

enum class UtilityKind {
    Value,              // value
    ValuePerArea,       // value / area
    Value15PerArea,     // value^1.5 / area
    ElongationWeighted, // (1 + t) * value / area, t = diameter / width
};

// Strategies for the direction u an item is pushed after placement, numbered
// as in the CLI (--push-strategy 1..4).
enum class PushStrategy {
    FixedRandom = 1,            // one random direction shared by all items
    DiameterNormalRandomSide,   // normal to the diameter, random left/right
    DiameterSkinnyLeftFatRight, // skinny items left, fat items right
    DiameterPlusLongestEdge,    // skinny: diameter normal left; fat: longest-edge normal right
};

struct GreedyConfig {
    int n_grid_points = 1000;      // typical range 500..5000
    int random_tries_per_point = 5; // typical range 3..10
    UtilityKind utility = UtilityKind::Value15PerArea;
    PushStrategy push_strategy = PushStrategy::DiameterSkinnyLeftFatRight;
    Coord jitter_radius = 0; // 0 = auto (2x lattice pitch)
    bool push_after_place = true;
    PushConfig push;
    std::uint64_t seed = 1;
};

struct PositionList {
    std::vector<Point> points; // shuffled lattice, centroid first
    Coord pitch = 1;
};

// Roughly n integer lattice points inside the container, shuffled, with the
// rounded centroid of the point set prepended.
PositionList build_position_list(const Polygon& container, int n, Rng& rng);

double utility(const ItemShape& item, UtilityKind kind);

// The diameter vector rotated +-90 degrees; "left" is the rotation with
// negative x-component (ties broken toward negative y).
Vector diameter_normal(const ShapeMetrics& metrics, bool left);

Vector choose_push_direction(const ItemShape& item, PushStrategy strategy, Vector fixed_random_u,
                             Rng& rng);

// Item indices sorted by decreasing utility, ties by original index.
std::vector<int> utility_order(const Instance& instance, UtilityKind kind);

// Greedy inner loop shared with the local-search fill routine: walks items in
// the given order and, while copies remain, probes every grid position plus
// jittered probes around it; the first valid spot wins and the item is pushed.
// Returns the total value gained.
std::int64_t greedy_fill(PackingState& state, const std::vector<int>& order,
                         const PositionList& positions, const GreedyConfig& cfg,
                         Vector fixed_random_u, Rng& rng);

Solution greedy_pack(const Instance& instance, const GreedyConfig& cfg);

} // namespace polypack
