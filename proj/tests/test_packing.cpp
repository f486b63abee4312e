#include <doctest.h>

#include "oracles.hpp"
#include "polypack/generators.hpp"
#include "polypack/packing.hpp"
#include "polypack/rng.hpp"

using namespace polypack;

namespace {

Instance two_squares_instance() {
    Polygon container{{0, 0}, {20, 0}, {20, 20}, {0, 20}};
    RawItem sq{{{0, 0}, {5, 0}, {5, 5}, {0, 5}}, 3, 4};
    RawItem tri{{{0, 0}, {4, 0}, {0, 4}}, 2, 2};
    return Instance::create("two_kinds", std::move(container), {sq, tri});
}

// can_place without the grid: scan every live placement.
bool can_place_full_scan(const PackingState& st, int item, Point pos) {
    const Instance& inst = st.instance();
    if (st.remaining(item) <= 0) return false;
    if (!inside_container(inst.items[item].chains, pos, inst.container)) return false;
    for (int id : st.live_ids()) {
        const auto& slot = st.slot(id);
        if (items_overlap(inst.items[item].chains, pos, inst.items[slot.item].chains, slot.pos)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("instance creation validates and reorients") {
    Polygon clockwise{{0, 0}, {0, 10}, {10, 10}, {10, 0}};
    const Instance inst = Instance::create("cw", clockwise, {{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 1, 1}});
    CHECK(is_ccw(inst.container));
    CHECK(is_ccw(inst.items[0].poly));

    CHECK_THROWS_AS(Instance::create("bad", {{0, 0}, {10, 0}, {5, 1}, {10, 2}, {0, 2}}, {}),
                    std::invalid_argument); // non-convex container
}

TEST_CASE("can_place basics and quantity exhaustion") {
    const Instance inst = two_squares_instance();
    PackingState st(inst);
    CHECK(st.can_place(0, {7, 7}));
    CHECK_FALSE(st.can_place(0, {18, 0})); // pokes out of the container

    // exhaust the quantity: 4 squares
    st.place(0, {0, 0});
    st.place(0, {5, 0});
    st.place(0, {10, 0});
    st.place(0, {15, 0});
    CHECK(st.remaining(0) == 0);
    CHECK_FALSE(st.can_place(0, {0, 10})); // geometry fine, quantity exhausted
}

TEST_CASE("place/unplace round-trips the state") {
    const Instance inst = two_squares_instance();
    PackingState st(inst);
    const int a = st.place(0, {0, 0});
    const int b = st.place(1, {10, 10});
    CHECK(st.total_value() == 5);
    CHECK(st.live_count() == 2);
    st.unplace(a);
    st.unplace(b);
    CHECK(st.total_value() == 0);
    CHECK(st.live_count() == 0);
    CHECK(st.remaining(0) == 4);
    CHECK(st.remaining(1) == 2);
    CHECK(st.grid().empty());
}

TEST_CASE("touching placements are legal") {
    const Instance inst = two_squares_instance();
    PackingState st(inst);
    st.place(0, {0, 0});
    CHECK(st.can_place(0, {5, 0}));
    st.place(0, {5, 0});
    CHECK(st.total_value() == 6);
}

TEST_CASE("can_place agrees with a grid-free full scan under random probing") {
    const Instance inst = gen_convex(25, ValuesMode::Random, 91);
    PackingState st(inst);
    Rng rng(92);
    const AABB& box = inst.container_box;
    int placed = 0;
    for (int probe = 0; probe < 10000; ++probe) {
        const int item = static_cast<int>(rng.bounded(inst.items.size()));
        const Point pos{rng.uniform(box.min.x - 10, box.max.x + 10),
                        rng.uniform(box.min.y - 10, box.max.y + 10)};
        const bool fast = st.can_place(item, pos);
        REQUIRE(fast == can_place_full_scan(st, item, pos));
        if (fast && placed < 40 && rng.chance(0.3)) {
            st.place(item, pos);
            ++placed;
        }
    }
    CHECK(placed > 10);
}

TEST_CASE("random mutation sequences keep the incremental value consistent") {
    const Instance inst = gen_polyomino(20, 6, ValuesMode::Random, 93);
    PackingState st(inst);
    Rng rng(94);
    std::vector<int> ids;
    const AABB& box = inst.container_box;
    for (int step = 0; step < 3000; ++step) {
        if (ids.empty() || rng.chance(0.65)) {
            const int item = static_cast<int>(rng.bounded(inst.items.size()));
            const Point pos{rng.uniform(box.min.x, box.max.x), rng.uniform(box.min.y, box.max.y)};
            if (st.can_place(item, pos)) ids.push_back(st.place(item, pos));
        } else {
            const std::size_t k = rng.bounded(ids.size());
            st.unplace(ids[k]);
            ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(k));
        }
        if (step % 100 == 0) {
            const VerifyReport report = verify(inst, st.to_solution());
            REQUIRE(report.feasible);
            REQUIRE(report.total_value == st.total_value());
        }
    }
}

TEST_CASE("verify: empty and obviously broken solutions") {
    const Instance inst = two_squares_instance();
    CHECK(verify(inst, Solution{"two_kinds", {}}).feasible);
    CHECK(verify(inst, Solution{"two_kinds", {}}).total_value == 0);

    // coincident squares: one overlap violation naming both indices
    const VerifyReport r = verify(inst, Solution{"two_kinds", {{0, {1, 1}}, {0, {1, 1}}}});
    CHECK_FALSE(r.feasible);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::Overlap);
    CHECK(r.violations[0].a == 0);
    CHECK(r.violations[0].b == 1);

    // bad instance name and out-of-range item index are reported, not thrown
    const VerifyReport bad = verify(inst, Solution{"elsewhere", {{17, {0, 0}}}});
    CHECK_FALSE(bad.feasible);
    CHECK(bad.violations.size() == 2);
}

TEST_CASE("verify detects injected corruptions") {
    const Instance inst = gen_convex(15, ValuesMode::Unit, 95);
    Rng rng(96);

    // build some feasible base solution by rejection
    PackingState st(inst);
    const AABB& box = inst.container_box;
    for (int tries = 0; tries < 4000 && st.live_count() < 10; ++tries) {
        const int item = static_cast<int>(rng.bounded(inst.items.size()));
        const Point pos{rng.uniform(box.min.x, box.max.x), rng.uniform(box.min.y, box.max.y)};
        if (st.can_place(item, pos)) st.place(item, pos);
    }
    const Solution base = st.to_solution();
    REQUIRE(base.placements.size() >= 5);
    REQUIRE(verify(inst, base).feasible);

    for (int trial = 0; trial < 200; ++trial) {
        Solution corrupted = base;
        const int kind = static_cast<int>(rng.bounded(3));
        if (kind == 0) { // duplicate a placement on top of another
            corrupted.placements.push_back(corrupted.placements[rng.bounded(base.placements.size())]);
        } else if (kind == 1) { // push one placement far outside
            Placement& p = corrupted.placements[rng.bounded(base.placements.size())];
            p.translation.x = box.max.x + 1000;
        } else { // quantity overflow: replicate one item beyond its quantity
            const Placement p = corrupted.placements[rng.bounded(base.placements.size())];
            const int q = inst.items[p.item_index].quantity;
            for (int c = 0; c <= q; ++c) {
                corrupted.placements.push_back(
                    {p.item_index, {box.max.x + 100 + 20 * c, box.min.y}});
            }
        }
        const VerifyReport r = verify(inst, corrupted);
        REQUIRE_FALSE(r.feasible);
    }
}

TEST_CASE("value ratio and score") {
    CHECK(value_ratio(100, 100).ratio == doctest::Approx(1.0));
    CHECK(value_ratio(100, 100).score == doctest::Approx(1.0));
    CHECK(value_ratio(0, 100).ratio == doctest::Approx(0.0));
    const ValueRatio r = value_ratio(851, 1000);
    CHECK(r.ratio == doctest::Approx(0.851));
    CHECK(r.score == doctest::Approx(0.724201));
    CHECK_THROWS_AS(value_ratio(5, 0), std::invalid_argument);
}
