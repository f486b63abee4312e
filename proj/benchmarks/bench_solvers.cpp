#include <benchmark/benchmark.h>

#include "polypack/generators.hpp"
#include "polypack/greedy.hpp"
#include "polypack/ip.hpp"
#include "polypack/local_search.hpp"
#include "polypack/pipeline.hpp"
#include "polypack/push.hpp"

using namespace polypack;

static void BM_GridQueries(benchmark::State& state) {
    const Instance inst = gen_convex(static_cast<int>(state.range(0)), ValuesMode::Random, 3);
    GreedyConfig cfg;
    cfg.n_grid_points = 500;
    cfg.seed = 1;
    const Solution sol = greedy_pack(inst, cfg);
    PackingState st = state_from_solution(inst, sol);
    Rng rng(4);
    std::vector<int> out;
    const AABB& box = inst.container_box;
    for (auto _ : state) {
        const Point p{rng.uniform(box.min.x, box.max.x), rng.uniform(box.min.y, box.max.y)};
        st.grid().query({{p.x, p.y}, {p.x + 40, p.y + 40}}, out);
        benchmark::DoNotOptimize(out.size());
    }
}
BENCHMARK(BM_GridQueries)->Arg(50)->Arg(200);

static void BM_Push(benchmark::State& state) {
    const Instance inst = gen_convex(80, ValuesMode::Random, 5);
    GreedyConfig cfg;
    cfg.n_grid_points = 400;
    cfg.seed = 2;
    const Solution sol = greedy_pack(inst, cfg);
    PackingState st = state_from_solution(inst, sol);
    const std::vector<int> ids = st.live_ids();
    Rng rng(6);
    for (auto _ : state) {
        const int id = ids[rng.bounded(ids.size())];
        Vector u{rng.uniform(-9, 9), rng.uniform(-9, 9)};
        if (u == Vector{0, 0}) u = {1, 0};
        benchmark::DoNotOptimize(push(st, id, u));
    }
}
BENCHMARK(BM_Push);

static void BM_GreedyPack(benchmark::State& state) {
    const Instance inst =
        gen_polyomino(static_cast<int>(state.range(0)), 8, ValuesMode::Random, 7);
    for (auto _ : state) {
        GreedyConfig cfg;
        cfg.n_grid_points = 600;
        cfg.seed = 3;
        benchmark::DoNotOptimize(greedy_pack(inst, cfg));
    }
}
BENCHMARK(BM_GreedyPack)->Arg(30)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_ConflictGraph(benchmark::State& state) {
    const Instance inst = gen_convex(static_cast<int>(state.range(0)), ValuesMode::Random, 8);
    for (auto _ : state) {
        Rng rng(9);
        CandidateSet cands = sample_uniform(inst, 24, rng);
        benchmark::DoNotOptimize(build_conflict_graph(cands, inst));
    }
}
BENCHMARK(BM_ConflictGraph)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_LocalSearchIteration(benchmark::State& state) {
    const Instance inst = gen_convex(100, ValuesMode::Random, 10);
    GreedyConfig cfg;
    cfg.n_grid_points = 500;
    cfg.seed = 4;
    const Solution sol = greedy_pack(inst, cfg);
    Rng rng(11);
    const PositionList L = build_position_list(inst.container, 500, rng);
    for (auto _ : state) {
        state.PauseTiming();
        PackingState st = state_from_solution(inst, sol);
        LsConfig ls;
        ls.iteration_budget = 5;
        ls.seed = 12;
        ls.dig_max_items = 16;
        state.ResumeTiming();
        benchmark::DoNotOptimize(optimize(st, ls, L, cfg));
    }
}
BENCHMARK(BM_LocalSearchIteration)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
