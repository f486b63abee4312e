#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polypack/chains.hpp"
#include "polypack/geometry.hpp"
#include "polypack/spatial_grid.hpp"

namespace polypack {

// An item shape with every derived structure the solvers need, computed once.
struct ItemShape {
    Polygon poly;
    AABB box;
    ChainSet chains;
    ShapeMetrics metrics;
    std::int64_t value = 0;
    int quantity = 1;
};

struct RawItem {
    Polygon poly;
    std::int64_t value = 0;
    int quantity = 1;
};

struct Instance {
    std::string name;
    Polygon container; // convex, counterclockwise, no collinear vertices
    AABB container_box;
    std::vector<ItemShape> items;

    // Normalizes orientation, validates every polygon and builds the caches.
    // Throws std::invalid_argument naming the offending item.
    static Instance create(std::string name, Polygon container, std::vector<RawItem> items);
};

struct Placement {
    int item_index = -1;
    Point translation;

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct Solution {
    std::string instance_name;
    std::vector<Placement> placements;
};

// Mutable packing under construction: placements, broad-phase grid, per-item
// remaining quantities and the running total value.
class PackingState {
public:
    explicit PackingState(const Instance& inst);

    const Instance& instance() const { return *inst_; }
    std::int64_t total_value() const { return total_value_; }
    int remaining(int item_index) const { return remaining_[item_index]; }
    int live_count() const { return live_count_; }

    // Geometric and quantity feasibility of placing one more copy.
    bool can_place(int item_index, Point pos) const;

    // Geometric feasibility only, ignoring the given live placements (used
    // when moving an item or a rigid group of items).
    bool valid_position(int item_index, Point pos, std::span<const int> ignore = {}) const;

    // Contract: can_place(item_index, pos). Returns the placement id.
    int place(int item_index, Point pos);
    void unplace(int id);

    // Contract: valid_position(item, pos, {id}). Keeps the id stable.
    void move(int id, Point pos);

    struct Slot {
        int item = -1;
        Point pos;
        bool live = false;
    };
    const std::vector<Slot>& slots() const { return slots_; }
    const Slot& slot(int id) const { return slots_[id]; }
    std::vector<int> live_ids() const;
    const Grid& grid() const { return grid_; }

    // Translated centroid of a placed item.
    Point placement_centroid(int id) const;

    Solution to_solution() const;

private:
    const Instance* inst_;
    Grid grid_;
    std::vector<Slot> slots_;
    std::vector<int> free_ids_;
    std::vector<int> remaining_;
    std::int64_t total_value_ = 0;
    int live_count_ = 0;
    mutable std::vector<int> scratch_;
};

// --- Independent verifier -------------------------------------------------
//
// Re-derives feasibility from the geometry kernel alone; shares nothing with
// the PackingState bookkeeping.

enum class ViolationKind {
    InstanceNameMismatch,
    BadItemIndex,
    OutsideContainer,
    Overlap,
    QuantityExceeded,
};

struct Violation {
    ViolationKind kind;
    int a = -1; // placement index (or item index for QuantityExceeded)
    int b = -1; // second placement index for Overlap
    std::string message;
};

struct VerifyReport {
    bool feasible = false;
    std::vector<Violation> violations;
    std::int64_t total_value = 0;
};

VerifyReport verify(const Instance& instance, const Solution& solution);

struct ValueRatio {
    double ratio = 0.0;
    double score = 0.0; // the competition score is the squared ratio
};

ValueRatio value_ratio(std::int64_t solution_value, std::int64_t best_value);

} // namespace polypack
