#include <doctest.h>

#include "oracles.hpp"
#include "polypack/generators.hpp"
#include "polypack/greedy.hpp"

using namespace polypack;

TEST_CASE("position list: exact square lattice with prepended centroid") {
    Rng rng(51);
    const Polygon container{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    const PositionList list = build_position_list(container, 121, rng);
    CHECK(list.pitch == 1);
    REQUIRE(list.points.size() == 121);
    CHECK(list.points.front() == Point{5, 5});
    for (const Point& p : list.points) {
        CHECK(locate_in_convex(container, p) != PointLocation::Outside);
    }
}

TEST_CASE("position list with n = 1 collapses to a single point") {
    Rng rng(52);
    const Polygon container{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    const PositionList list = build_position_list(container, 1, rng);
    CHECK(list.points.size() == 1);
}

TEST_CASE("position list on random convex containers: containment and count") {
    Rng rng(53);
    for (int trial = 0; trial < 25; ++trial) {
        const Polygon container = oracle::random_convex_polygon(rng, 3000, 10);
        const int n = static_cast<int>(rng.uniform(200, 2000));
        const PositionList list = build_position_list(container, n, rng);
        for (const Point& p : list.points) {
            REQUIRE(locate_in_convex(container, p) != PointLocation::Outside);
        }
        const double count = static_cast<double>(list.points.size());
        CHECK(count >= 0.8 * n);
        CHECK(count <= 1.2 * n);
    }
}

TEST_CASE("utility functions") {
    Polygon container{{0, 0}, {100, 0}, {100, 100}, {0, 100}};
    RawItem a{{{0, 0}, {2, 0}, {2, 1}, {0, 1}}, 4, 1};  // area 2
    RawItem b{{{0, 0}, {5, 0}, {5, 1}, {0, 1}}, 10, 1}; // area 5
    RawItem bar{{{0, 0}, {10, 0}, {10, 1}, {0, 1}}, 1, 1};
    const Instance inst = Instance::create("u", container, {a, b, bar});

    CHECK(utility(inst.items[0], UtilityKind::Value) == doctest::Approx(4.0));
    CHECK(utility(inst.items[0], UtilityKind::Value15PerArea) == doctest::Approx(4.0)); // 8/2
    CHECK(utility(inst.items[1], UtilityKind::ValuePerArea) == doctest::Approx(2.0));
    // 10x1 bar: t = diameter^2 / width-projection span = 101/20
    const double t = inst.items[2].metrics.elongation();
    CHECK(t == doctest::Approx(101.0 / 20.0));
    CHECK(utility(inst.items[2], UtilityKind::ElongationWeighted) ==
          doctest::Approx((1.0 + t) * 1.0 / 10.0));
}

TEST_CASE("push directions: rotation, sides, skinny split") {
    Polygon container{{0, 0}, {100, 0}, {100, 100}, {0, 100}};
    RawItem bar{{{0, 0}, {10, 0}, {10, 1}, {0, 1}}, 1, 1};
    RawItem fat{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}, 1, 1};
    const Instance inst = Instance::create("d", container, {bar, fat});
    const ShapeMetrics& bar_m = inst.items[0].metrics;

    // rotating the diameter (10,1) by -90 degrees gives (1,-10): that is the
    // normal with negative y, which is also the "right" side here
    CHECK(rot_cw(Vector{10, 1}) == Vector{1, -10});
    CHECK(diameter_normal(bar_m, /*left=*/false) == Vector{1, -10});
    CHECK(diameter_normal(bar_m, /*left=*/true) == Vector{-1, 10});

    Rng rng(54);
    CHECK(bar_m.is_skinny);
    const Vector u = choose_push_direction(inst.items[0],
                                           PushStrategy::DiameterSkinnyLeftFatRight, {1, 0}, rng);
    CHECK(u == Vector{-1, 10}); // skinny goes left
    CHECK(u.x < 0);

    const Vector f = choose_push_direction(inst.items[1],
                                           PushStrategy::DiameterSkinnyLeftFatRight, {1, 0}, rng);
    CHECK(f.x > 0); // fat goes right

    // strategies 2 and 3 stay perpendicular to the diameter
    for (int trial = 0; trial < 1000; ++trial) {
        const Polygon poly = oracle::random_star_polygon(rng, 500, 12);
        const Instance one = Instance::create("t", container, {{poly, 1, 1}});
        const ShapeMetrics& m = one.items[0].metrics;
        const Vector d = m.diameter_b - m.diameter_a;
        for (PushStrategy s : {PushStrategy::DiameterNormalRandomSide,
                               PushStrategy::DiameterSkinnyLeftFatRight}) {
            const Vector dir = choose_push_direction(one.items[0], s, {1, 0}, rng);
            CHECK(dot(dir, d) == 0);
            CHECK_FALSE(dir == Vector{0, 0});
        }
        // strategy 4: perpendicular to the longest edge for fat items
        if (!m.is_skinny) {
            const Vector e = m.longest_edge_b - m.longest_edge_a;
            const Vector dir = choose_push_direction(one.items[0],
                                                     PushStrategy::DiameterPlusLongestEdge,
                                                     {1, 0}, rng);
            CHECK(dot(dir, e) == 0);
        }
    }
}

TEST_CASE("utility order sorts by decreasing utility with index ties") {
    Polygon container{{0, 0}, {100, 0}, {100, 100}, {0, 100}};
    RawItem small_rich{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}, 8, 1};
    RawItem big_poor{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}, 8, 1};
    RawItem twin{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}, 8, 1};
    const Instance inst = Instance::create("o", container, {big_poor, small_rich, twin});
    const std::vector<int> order = utility_order(inst, UtilityKind::ValuePerArea);
    CHECK(order == std::vector<int>{1, 2, 0});
}

TEST_CASE("greedy packs the full tiling instance") {
    const Instance inst = gen_tiling(5, 20, ValuesMode::Unit, 1);
    GreedyConfig cfg;
    cfg.n_grid_points = 1000;
    cfg.push_strategy = PushStrategy::DiameterSkinnyLeftFatRight;
    cfg.seed = 7;
    const Solution sol = greedy_pack(inst, cfg);
    const VerifyReport report = verify(inst, sol);
    REQUIRE(report.feasible);
    CHECK(report.total_value >= 24); // 25 squares fit exactly; the greedy gets >= 24
}

TEST_CASE("an item larger than the container yields an empty solution") {
    Polygon container{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
    RawItem huge{{{0, 0}, {50, 0}, {50, 50}, {0, 50}}, 100, 1};
    const Instance inst = Instance::create("huge", container, {huge});
    const Solution sol = greedy_pack(inst, GreedyConfig{});
    CHECK(sol.placements.empty());
}

TEST_CASE("greedy is deterministic for a fixed seed") {
    const Instance inst = gen_convex(20, ValuesMode::Random, 55);
    GreedyConfig cfg;
    cfg.seed = 99;
    const Solution a = greedy_pack(inst, cfg);
    const Solution b = greedy_pack(inst, cfg);
    REQUIRE(a.placements.size() == b.placements.size());
    CHECK(a.placements == b.placements);
    REQUIRE(verify(inst, a).feasible);

    cfg.seed = 100;
    const Solution c = greedy_pack(inst, cfg);
    CHECK(verify(inst, c).feasible);
}

TEST_CASE("every greedy strategy and utility produces feasible output") {
    const Instance inst = gen_polyomino(15, 6, ValuesMode::Area, 56);
    for (UtilityKind u : {UtilityKind::Value, UtilityKind::ValuePerArea,
                          UtilityKind::Value15PerArea, UtilityKind::ElongationWeighted}) {
        for (PushStrategy s :
             {PushStrategy::FixedRandom, PushStrategy::DiameterNormalRandomSide,
              PushStrategy::DiameterSkinnyLeftFatRight, PushStrategy::DiameterPlusLongestEdge}) {
            GreedyConfig cfg;
            cfg.n_grid_points = 300;
            cfg.utility = u;
            cfg.push_strategy = s;
            cfg.seed = 3;
            const Solution sol = greedy_pack(inst, cfg);
            REQUIRE(verify(inst, sol).feasible);
        }
    }
}
