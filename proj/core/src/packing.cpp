#include "polypack/packing.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace polypack {

Instance Instance::create(std::string name, Polygon container, std::vector<RawItem> raw) {
    Instance inst;
    inst.name = std::move(name);
    if (container.size() >= 3 && doubled_signed_area(container) < 0) {
        std::reverse(container.begin(), container.end());
    }
    try {
        // The hull drops collinear boundary vertices, which the convex
        // point-location binary search requires; it does not change the region.
        validate_convex_container(container);
        inst.container = convex_hull(container);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("container: ") + e.what());
    }
    inst.container_box = bounding_box(inst.container);

    inst.items.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        RawItem& r = raw[i];
        if (r.poly.size() >= 3 && doubled_signed_area(r.poly) < 0) {
            std::reverse(r.poly.begin(), r.poly.end());
        }
        try {
            validate_polygon(r.poly);
            if (r.value < 0) throw std::invalid_argument("negative value");
            if (r.quantity < 1) throw std::invalid_argument("quantity below 1");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("item " + std::to_string(i) + ": " + e.what());
        }
        ItemShape shape;
        shape.poly = std::move(r.poly);
        shape.box = bounding_box(shape.poly);
        shape.chains = decompose_chains(shape.poly);
        shape.metrics = compute_metrics(shape.poly);
        shape.value = r.value;
        shape.quantity = r.quantity;
        inst.items.push_back(std::move(shape));
    }
    return inst;
}

namespace {

std::vector<AABB> item_boxes(const Instance& inst) {
    std::vector<AABB> boxes;
    boxes.reserve(inst.items.size());
    for (const ItemShape& item : inst.items) boxes.push_back(item.box);
    return boxes;
}

} // namespace

PackingState::PackingState(const Instance& inst)
    : inst_(&inst), grid_(Grid::for_boxes(inst.container_box, item_boxes(inst))) {
    remaining_.reserve(inst.items.size());
    for (const ItemShape& item : inst.items) remaining_.push_back(item.quantity);
}

bool PackingState::valid_position(int item_index, Point pos, std::span<const int> ignore) const {
    const ItemShape& item = inst_->items[item_index];
    const AABB box = item.box.translated(pos);
    if (!(inst_->container_box.contains(box.min) && inst_->container_box.contains(box.max))) {
        return false;
    }
    if (!inside_container(item.chains, pos, inst_->container)) return false;
    grid_.query(box, scratch_);
    for (int id : scratch_) {
        if (std::find(ignore.begin(), ignore.end(), id) != ignore.end()) continue;
        const Slot& other = slots_[id];
        if (items_overlap(item.chains, pos, inst_->items[other.item].chains, other.pos)) {
            return false;
        }
    }
    return true;
}

bool PackingState::can_place(int item_index, Point pos) const {
    return remaining_[item_index] > 0 && valid_position(item_index, pos);
}

int PackingState::place(int item_index, Point pos) {
    assert(can_place(item_index, pos));
    int id;
    if (!free_ids_.empty()) {
        id = free_ids_.back();
        free_ids_.pop_back();
        slots_[id] = {item_index, pos, true};
    } else {
        id = static_cast<int>(slots_.size());
        slots_.push_back({item_index, pos, true});
    }
    grid_.insert(id, inst_->items[item_index].box.translated(pos));
    --remaining_[item_index];
    total_value_ += inst_->items[item_index].value;
    ++live_count_;
    return id;
}

void PackingState::unplace(int id) {
    Slot& slot = slots_[id];
    assert(slot.live);
    grid_.remove(id, inst_->items[slot.item].box.translated(slot.pos));
    ++remaining_[slot.item];
    total_value_ -= inst_->items[slot.item].value;
    --live_count_;
    slot.live = false;
    free_ids_.push_back(id);
}

void PackingState::move(int id, Point pos) {
    Slot& slot = slots_[id];
    assert(slot.live);
    const AABB& base = inst_->items[slot.item].box;
    grid_.remove(id, base.translated(slot.pos));
    slot.pos = pos;
    grid_.insert(id, base.translated(pos));
}

std::vector<int> PackingState::live_ids() const {
    std::vector<int> ids;
    ids.reserve(live_count_);
    for (std::size_t id = 0; id < slots_.size(); ++id) {
        if (slots_[id].live) ids.push_back(static_cast<int>(id));
    }
    return ids;
}

Point PackingState::placement_centroid(int id) const {
    const Slot& slot = slots_[id];
    return inst_->items[slot.item].metrics.centroid + slot.pos;
}

Solution PackingState::to_solution() const {
    Solution sol;
    sol.instance_name = inst_->name;
    sol.placements.reserve(live_count_);
    for (const Slot& slot : slots_) {
        if (slot.live) sol.placements.push_back({slot.item, slot.pos});
    }
    return sol;
}

VerifyReport verify(const Instance& instance, const Solution& solution) {
    VerifyReport report;
    if (solution.instance_name != instance.name) {
        report.violations.push_back({ViolationKind::InstanceNameMismatch, -1, -1,
                                     "solution names instance '" + solution.instance_name +
                                         "', expected '" + instance.name + "'"});
    }

    const int n_items = static_cast<int>(instance.items.size());
    std::vector<int> counts(instance.items.size(), 0);
    std::vector<int> usable; // placement indices with a valid item_index
    usable.reserve(solution.placements.size());

    for (std::size_t i = 0; i < solution.placements.size(); ++i) {
        const Placement& p = solution.placements[i];
        if (p.item_index < 0 || p.item_index >= n_items) {
            report.violations.push_back({ViolationKind::BadItemIndex, static_cast<int>(i), -1,
                                         "placement " + std::to_string(i) +
                                             " references item " + std::to_string(p.item_index)});
            continue;
        }
        usable.push_back(static_cast<int>(i));
        ++counts[p.item_index];
        report.total_value += instance.items[p.item_index].value;

        const ItemShape& item = instance.items[p.item_index];
        if (!inside_container(item.chains, p.translation, instance.container)) {
            report.violations.push_back({ViolationKind::OutsideContainer, static_cast<int>(i), -1,
                                         "placement " + std::to_string(i) +
                                             " is not fully inside the container"});
        }
    }

    for (int item = 0; item < n_items; ++item) {
        if (counts[item] > instance.items[item].quantity) {
            report.violations.push_back(
                {ViolationKind::QuantityExceeded, item, -1,
                 "item " + std::to_string(item) + " placed " + std::to_string(counts[item]) +
                     " times, quantity is " + std::to_string(instance.items[item].quantity)});
        }
    }

    // Pairwise overlaps, grid-accelerated but using only the overlap kernel.
    std::vector<AABB> boxes;
    boxes.reserve(usable.size());
    AABB extent = instance.container_box;
    for (int i : usable) {
        const Placement& p = solution.placements[i];
        const AABB b = instance.items[p.item_index].box.translated(p.translation);
        extent.min.x = std::min(extent.min.x, b.min.x);
        extent.min.y = std::min(extent.min.y, b.min.y);
        extent.max.x = std::max(extent.max.x, b.max.x);
        extent.max.y = std::max(extent.max.y, b.max.y);
        boxes.push_back(b);
    }
    Grid grid = Grid::for_boxes(extent, boxes);
    for (std::size_t k = 0; k < usable.size(); ++k) {
        grid.insert(static_cast<int>(k), boxes[k]);
    }
    std::vector<int> cands;
    for (std::size_t k = 0; k < usable.size(); ++k) {
        const Placement& p = solution.placements[usable[k]];
        grid.query(boxes[k], cands);
        for (int other : cands) {
            if (other <= static_cast<int>(k)) continue;
            const Placement& q = solution.placements[usable[other]];
            if (items_overlap(instance.items[p.item_index].chains, p.translation,
                              instance.items[q.item_index].chains, q.translation)) {
                report.violations.push_back(
                    {ViolationKind::Overlap, usable[k], usable[other],
                     "placements " + std::to_string(usable[k]) + " and " +
                         std::to_string(usable[other]) + " overlap"});
            }
        }
    }

    report.feasible = report.violations.empty();
    return report;
}

ValueRatio value_ratio(std::int64_t solution_value, std::int64_t best_value) {
    if (best_value <= 0) throw std::invalid_argument("best_value must be positive");
    ValueRatio r;
    r.ratio = static_cast<double>(solution_value) / static_cast<double>(best_value);
    r.score = r.ratio * r.ratio;
    return r;
}

} // namespace polypack
