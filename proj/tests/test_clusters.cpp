#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "polypack/clusters.hpp"
#include "polypack/generators.hpp"

using namespace polypack;

namespace {

Polygon big_container() { return {{0, 0}, {2000, 0}, {2000, 2000}, {0, 2000}}; }

Instance items_instance(std::vector<RawItem> items, std::string name = "inst") {
    return Instance::create(std::move(name), big_container(), std::move(items));
}

RawItem rect_item(Coord w, Coord h, std::int64_t value = 1, int quantity = 10) {
    return {{{0, 0}, {w, 0}, {w, h}, {0, h}}, value, quantity};
}

ClusterConfig plain_config() {
    ClusterConfig cfg;
    cfg.gauss_sigma = 0.0; // deterministic utilities in tests
    cfg.alpha = 1.0;
    cfg.penalty_floor = 0.01;
    return cfg;
}

} // namespace

TEST_CASE("single-item cluster utility is value/area with penalty 1") {
    const Instance inst = items_instance({rect_item(1, 1, 1)});
    ClusterConfig cfg = plain_config();
    Rng rng(61);
    const Cluster c = single_item_cluster(0, inst, cfg, rng);
    CHECK(compute_penalty(c, inst, cfg.penalty_floor) == doctest::Approx(1.0));
    CHECK(c.utility == doctest::Approx(1.0)); // 1^1 * 1 / 1

    cfg.alpha = 2.0;
    const Instance inst4 = items_instance({rect_item(2, 2, 4)});
    const Cluster c4 = single_item_cluster(0, inst4, cfg, rng);
    CHECK(c4.utility == doctest::Approx(4.0)); // 4^2 / 4
}

TEST_CASE("penalty separates the square assembly from the long bar") {
    // ten 10x1 bars assembled as a 10x10 square vs as a 100x1 bar
    const Instance inst = items_instance({rect_item(10, 1, 1, 10)});
    std::vector<ClusterMember> square_members, bar_members;
    for (int i = 0; i < 10; ++i) {
        square_members.push_back({0, {0, i}});
        bar_members.push_back({0, {10 * i, 0}});
    }
    ClusterConfig cfg = plain_config();
    Rng rng(62);
    const Cluster square = make_cluster(square_members, inst, cfg, rng);
    const Cluster bar = make_cluster(bar_members, inst, cfg, rng);

    // square hull: thickness 1 (width == diameter along the two diagonals)
    CHECK(compute_penalty(square, inst, cfg.penalty_floor) == doctest::Approx(1.0));
    // long bar: thickness(hull) = 200/10001, member thickness = 20/101
    const double expected = (200.0 / 10001.0) / (20.0 / 101.0);
    CHECK(compute_penalty(bar, inst, cfg.penalty_floor) == doctest::Approx(expected));
    CHECK(expected < 0.2);

    // equal value and equal hull area, so the penalty decides the ordering
    CHECK(square.hull_doubled_area == bar.hull_doubled_area);
    CHECK(square.utility > bar.utility);

    // single-member cluster keeps penalty 1
    const Cluster one = single_item_cluster(0, inst, cfg, rng);
    CHECK(compute_penalty(one, inst, cfg.penalty_floor) == doctest::Approx(1.0));
}

TEST_CASE("penalty is invariant under uniform scaling") {
    ClusterConfig cfg = plain_config();
    Rng rng(63);
    for (const Coord scale : {1, 2, 5}) {
        const Instance inst = items_instance({rect_item(10 * scale, scale, 1, 4)});
        std::vector<ClusterMember> members{{0, {0, 0}}, {0, {0, scale}}};
        const Cluster c = make_cluster(members, inst, cfg, rng);
        const Instance base = items_instance({rect_item(10, 1, 1, 4)});
        const Cluster cb =
            make_cluster({{0, {0, 0}}, {0, {0, 1}}}, base, cfg, rng);
        CHECK(compute_penalty(c, inst, cfg.penalty_floor) ==
              doctest::Approx(compute_penalty(cb, base, cfg.penalty_floor)));
    }
}

TEST_CASE("rand graph is a union of group cliques") {
    std::vector<RawItem> items(200, rect_item(2, 2));
    const Instance inst = items_instance(std::move(items));
    ClusterConfig cfg = plain_config();
    cfg.rand_group_size = 100;
    Rng rng(64);
    const CompatGraph g = build_rand_graph(inst, cfg, rng);
    std::size_t degree_sum = 0;
    for (const auto& list : g.adj) {
        CHECK(list.size() <= 99);
        degree_sum += list.size();
    }
    CHECK(degree_sum == 2 * 2 * (100 * 99 / 2)); // two cliques of 100

    // few items: single clique over everything
    std::vector<RawItem> few(10, rect_item(2, 2));
    const Instance small = items_instance(std::move(few));
    const CompatGraph gs = build_rand_graph(small, cfg, rng);
    for (const auto& list : gs.adj) CHECK(list.size() == 9);
}

TEST_CASE("skinny graph connects parallel bars only") {
    RawItem horizontal = rect_item(10, 1);
    RawItem vertical{{{0, 0}, {1, 0}, {1, 10}, {0, 10}}, 1, 10};
    RawItem fat = rect_item(5, 5);
    const Instance inst = items_instance({horizontal, horizontal, vertical, fat});
    const CompatGraph g = build_skinny_graph(inst, plain_config());
    CHECK(g.adj[0] == std::vector<int>{1}); // the two parallel bars
    CHECK(g.adj[1] == std::vector<int>{0});
    CHECK(g.adj[2].empty()); // perpendicular: 8 buckets away
    CHECK(g.adj[3].empty()); // fat items are not vertices

    const Instance none = items_instance({fat, fat});
    const CompatGraph g2 = build_skinny_graph(none, plain_config());
    for (const auto& list : g2.adj) CHECK(list.empty());
}

TEST_CASE("concav graph links pockets to items that fit them") {
    RawItem ell{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, 1, 5};
    RawItem unit = rect_item(1, 1);
    RawItem big = rect_item(3, 3);
    const Instance inst = items_instance({ell, unit, big});
    const CompatGraph g = build_concav_graph(inst);
    CHECK(std::set<int>(g.adj[0].begin(), g.adj[0].end()) == std::set<int>{1});
    CHECK(g.adj[1] == std::vector<int>{0});
    CHECK(g.adj[2].empty()); // 3x3 does not fit the 1x1 pocket box

    const Instance convex_only = items_instance({unit, big});
    const CompatGraph g2 = build_concav_graph(convex_only);
    for (const auto& list : g2.adj) CHECK(list.empty());
}

TEST_CASE("shear graph groups by dominant direction pairs") {
    // axis-aligned polyominoes: all share the {0, 90} bucket pair
    RawItem sq = rect_item(4, 4);
    RawItem bar = rect_item(8, 2);
    const Instance axis = items_instance({sq, bar, sq});
    const CompatGraph g = build_shear_graph(axis);
    CHECK(g.adj[0] == std::vector<int>{1, 2});

    // two populations sheared differently: no cross edges
    RawItem sheared{{{0, 0}, {8, 0}, {12, 6}, {4, 6}}, 1, 5};    // slanted sides
    RawItem steep{{{0, 0}, {8, 0}, {2, 9}, {-6, 9}}, 1, 5};      // different shear
    const Instance two = items_instance({sheared, sheared, steep, steep});
    const CompatGraph g2 = build_shear_graph(two);
    CHECK(g2.adj[0] == std::vector<int>{1});
    CHECK(g2.adj[2] == std::vector<int>{3});

    const Instance single = items_instance({sq});
    CHECK(build_shear_graph(single).adj[0].empty());
}

TEST_CASE("contour words classify polyomino shapes") {
    auto shape_of = [](Polygon poly) {
        const Instance inst = items_instance({{std::move(poly), 1, 1}});
        return contour_word(inst.items[0]);
    };
    // 4x1 bar (scaled by 7 to exercise the lattice inference)
    const ContourWord bar = shape_of({{0, 0}, {28, 0}, {28, 7}, {0, 7}});
    CHECK(bar.closed);
    CHECK(bar.shape_class == ShapeClass::Bar);
    CHECK(bar.letters.size() == 10);

    // L-tromino
    const ContourWord ell = shape_of({{0, 0}, {14, 0}, {14, 7}, {7, 7}, {7, 14}, {0, 14}});
    CHECK(ell.closed);
    CHECK(ell.shape_class == ShapeClass::Ell);

    // plus-pentomino
    const ContourWord cross = shape_of({{7, 0},  {14, 0}, {14, 7}, {21, 7}, {21, 14}, {14, 14},
                                        {14, 21}, {7, 21}, {7, 14}, {0, 14}, {0, 7},  {7, 7}});
    CHECK(cross.closed);
    CHECK(cross.shape_class == ShapeClass::Cross);

    // S-tetromino
    const ContourWord wave =
        shape_of({{0, 0}, {14, 0}, {14, 7}, {21, 7}, {21, 14}, {7, 14}, {7, 7}, {0, 7}});
    CHECK(wave.closed);
    CHECK(wave.shape_class == ShapeClass::Wave);

    // 2x2 square is none of the named classes
    const ContourWord sq = shape_of({{0, 0}, {14, 0}, {14, 14}, {0, 14}});
    CHECK(sq.closed);
    CHECK(sq.shape_class == ShapeClass::Other);

    // a slanted triangle cannot snap to an axis-parallel loop
    const ContourWord odd = shape_of({{0, 0}, {13, 4}, {5, 12}});
    CHECK_FALSE(odd.closed);
}

TEST_CASE("atris graph wiring follows the complementarity table") {
    RawItem bar{{{0, 0}, {28, 0}, {28, 7}, {0, 7}}, 1, 5};
    RawItem ell{{{0, 0}, {14, 0}, {14, 7}, {7, 7}, {7, 14}, {0, 14}}, 1, 5};
    RawItem square{{{0, 0}, {14, 0}, {14, 14}, {0, 14}}, 1, 5};
    RawItem jagged{{{0, 0}, {13, 4}, {5, 12}}, 1, 5};
    const Instance inst = items_instance({ell, ell, bar, square, jagged});
    const CompatGraph g = build_atris_graph(inst);
    auto connected = [&](int a, int b) {
        return std::find(g.adj[a].begin(), g.adj[a].end(), b) != g.adj[a].end();
    };
    CHECK(connected(0, 1));       // Ell-Ell
    CHECK(connected(0, 2));       // Ell-Bar
    CHECK(connected(3, 2));       // Other (square) pairs with bars only
    CHECK_FALSE(connected(3, 0)); // Other-Ell: no rule
    CHECK(g.adj[4].empty());      // snap failure stays isolated
}

TEST_CASE("vertex assembly of two unit squares prefers the domino") {
    const Instance inst = items_instance({rect_item(1, 1, 1, 4)});
    ClusterConfig cfg = plain_config();
    Rng rng(65);
    const Cluster one = single_item_cluster(0, inst, cfg, rng);
    const auto best = assemble_vertex(one, 0, inst, cfg, rng);
    REQUIRE(best.has_value());
    CHECK(best->members.size() == 2);
    CHECK(best->hull_doubled_area == 4); // the 2x1 domino, not a diagonal contact
}

TEST_CASE("vertex assembly finds the exact notch fit") {
    RawItem ell{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, 1, 2};
    RawItem unit = rect_item(1, 1, 1, 2);
    const Instance inst = items_instance({ell, unit});
    ClusterConfig cfg = plain_config();
    Rng rng(66);
    const Cluster base = single_item_cluster(0, inst, cfg, rng);
    const auto best = assemble_vertex(base, 1, inst, cfg, rng);
    REQUIRE(best.has_value());
    // the notch fill completes the 2x2 square: hull doubled area 8
    CHECK(best->hull_doubled_area == 8);
}

TEST_CASE("grid assembly returns nothing when every lattice position overlaps") {
    // 95x95 item against a 10x10 cluster: the centered lattice misses the
    // touching extremes, so every tested position overlaps.
    RawItem base_sq = rect_item(10, 10, 1, 2);
    RawItem huge = rect_item(95, 95, 1, 2);
    const Instance inst = items_instance({base_sq, huge});
    ClusterConfig cfg = plain_config();
    cfg.grid_points_assembly = 100;
    Rng rng(67);
    const Cluster base = single_item_cluster(0, inst, cfg, rng);
    CHECK_FALSE(assemble_grid(base, 1, inst, cfg, rng).has_value());
    // vertex pairings, by contrast, always offer a touching position
    CHECK(assemble_vertex(base, 1, inst, cfg, rng).has_value());
}

TEST_CASE("grid assembly improves the hull over a distant placement") {
    const Instance inst = items_instance({rect_item(1, 1, 1, 4)});
    ClusterConfig cfg = plain_config();
    cfg.grid_points_assembly = 900;
    Rng rng(68);
    const Cluster one = single_item_cluster(0, inst, cfg, rng);
    const auto best = assemble_grid(one, 0, inst, cfg, rng);
    REQUIRE(best.has_value());
    // touching arrangements dominate: hull at most twice a side-by-side hull
    CHECK(best->hull_doubled_area <= 2 * 4);
    // determinism for a fixed seed
    Rng rng2(68);
    const auto again = assemble_grid(one, 0, inst, cfg, rng2);
    REQUIRE(again.has_value());
    CHECK(again->hull_doubled_area == best->hull_doubled_area);
    CHECK(again->members.back().offset == best->members.back().offset);
}

TEST_CASE("generate_clusters: empty graphs produce an empty pool") {
    const Instance inst = items_instance({rect_item(1, 1, 1, 4)});
    ClusterConfig cfg = plain_config();
    Rng rng(69);
    CompatGraph empty{CompatKind::Rand, std::vector<std::vector<int>>(1)};
    const ClusterPool pool = generate_clusters(inst, {empty}, cfg, rng);
    CHECK(pool.clusters.empty());
}

TEST_CASE("generate_clusters builds the 2x2 block from four unit squares on a clique") {
    // four distinct unit-square items, fully connected
    std::vector<RawItem> squares(4, rect_item(1, 1, 1, 1));
    const Instance inst = items_instance(std::move(squares));
    ClusterConfig cfg = plain_config();
    cfg.max_generation = 4;
    cfg.m_per_item = 4;
    Rng rng(70);
    CompatGraph clique{CompatKind::Rand, std::vector<std::vector<int>>(4)};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i != j) clique.adj[i].push_back(j);
        }
    }
    const ClusterPool pool = generate_clusters(inst, {clique}, cfg, rng);
    REQUIRE_FALSE(pool.clusters.empty());
    bool found_block = false;
    for (const Cluster& c : pool.clusters) {
        CHECK(c.members.size() >= 2);
        CHECK(c.members.size() <= 4);
        if (c.members.size() == 4 && c.hull_doubled_area == 8) found_block = true;
        // interior-disjointness re-checked with the naive oracle
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            for (std::size_t j = i + 1; j < c.members.size(); ++j) {
                const auto& a = c.members[i];
                const auto& b = c.members[j];
                CHECK_FALSE(oracle::items_overlap_naive(
                    inst.items[a.item_index].poly, inst.items[b.item_index].poly,
                    b.offset - a.offset));
            }
        }
    }
    CHECK(found_block);
    // pool growth bound: m_per_item * items * generations
    CHECK(pool.clusters.size() <= 4u * 4u * 4u);
}

TEST_CASE("retention keeps at most m clusters per item per generation") {
    std::vector<RawItem> items;
    for (int i = 0; i < 6; ++i) items.push_back(rect_item(1 + i % 3, 1, 1, 3));
    const Instance inst = items_instance(std::move(items));
    ClusterConfig cfg = plain_config();
    cfg.m_per_item = 2;
    cfg.max_generation = 3;
    Rng rng(71);
    const CompatGraph g = build_rand_graph(inst, cfg, rng);
    const ClusterPool pool = generate_clusters(inst, {g}, cfg, rng);
    CHECK(pool.clusters.size() <= 2u * 6u * 3u);
}

TEST_CASE("cluster-aware greedy: empty pool equals plain item packing") {
    const Instance inst = gen_convex(10, ValuesMode::Random, 72);
    GreedyConfig greedy;
    greedy.seed = 5;
    greedy.n_grid_points = 200;
    const Solution with_empty =
        greedy_pack_with_clusters(inst, ClusterPool{}, greedy, plain_config());
    REQUIRE(verify(inst, with_empty).feasible);
    CHECK_FALSE(with_empty.placements.empty());
}

TEST_CASE("cluster placement is atomic and respects quantities") {
    // the cluster consumes both copies; afterwards nothing remains
    const Instance inst = items_instance({rect_item(6, 6, 5, 2)});
    ClusterConfig cfg = plain_config();
    Rng rng(73);
    const Cluster pair = make_cluster({{0, {0, 0}}, {0, {6, 0}}}, inst, cfg, rng);
    ClusterPool pool;
    pool.clusters.push_back(pair);
    GreedyConfig greedy;
    greedy.n_grid_points = 150;
    greedy.seed = 2;
    const Solution sol = greedy_pack_with_clusters(inst, pool, greedy, cfg);
    REQUIRE(verify(inst, sol).feasible);
    CHECK(sol.placements.size() == 2); // exactly one cluster copy, nothing more
}

TEST_CASE("a cluster that cannot be placed leaves the state unchanged") {
    // container too small for the pair; singles still fit
    Polygon container{{0, 0}, {8, 0}, {8, 8}, {0, 8}};
    RawItem item = rect_item(6, 6, 5, 2);
    const Instance inst = Instance::create("tight", container, {item});
    ClusterConfig cfg = plain_config();
    Rng rng(74);
    const Cluster pair = make_cluster({{0, {0, 0}}, {0, {6, 0}}}, inst, cfg, rng);
    ClusterPool pool;
    pool.clusters.push_back(pair);
    GreedyConfig greedy;
    greedy.n_grid_points = 100;
    greedy.seed = 2;
    const Solution sol = greedy_pack_with_clusters(inst, pool, greedy, cfg);
    REQUIRE(verify(inst, sol).feasible);
    CHECK(sol.placements.size() == 1); // the single copy, placed after the cluster failed
}

TEST_CASE("cluster pool files round-trip") {
    const Instance inst = items_instance({rect_item(1, 1, 1, 4), rect_item(2, 1, 3, 2)});
    ClusterConfig cfg = plain_config();
    Rng rng(75);
    const Cluster a = make_cluster({{0, {0, 0}}, {1, {1, 0}}}, inst, cfg, rng);
    const Cluster b = make_cluster({{0, {0, 0}}, {0, {0, 1}}}, inst, cfg, rng);
    ClusterPool pool;
    pool.clusters = {a, b};
    const std::string text = cluster_pool_to_json(pool, inst.name);
    const ClusterPool loaded = parse_cluster_pool_json(text, inst);
    REQUIRE(loaded.clusters.size() == 2);
    CHECK(loaded.clusters[0].members.size() == 2);
    CHECK(loaded.clusters[0].members[1].offset == Point{1, 0});
    CHECK(loaded.clusters[0].utility == doctest::Approx(a.utility));
    CHECK(loaded.clusters[0].hull_doubled_area == a.hull_doubled_area);

    CHECK_THROWS(parse_cluster_pool_json("{}", inst));
    CHECK_THROWS(parse_cluster_pool_json(
        R"({"type":"polypack_clusters","version":1,"clusters":[{"items":[9],"dx":[0],"dy":[0]}]})",
        inst));
}
