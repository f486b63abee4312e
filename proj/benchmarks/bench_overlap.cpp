#include <benchmark/benchmark.h>

#include "polypack/chains.hpp"
#include "polypack/rng.hpp"

using namespace polypack;

namespace {

Polygon star(Rng& rng, Coord radius, int points) {
    for (;;) {
        std::vector<double> angles;
        for (int i = 0; i < points; ++i) angles.push_back(rng.real01() * 6.283185307179586);
        std::sort(angles.begin(), angles.end());
        Polygon poly;
        for (double a : angles) {
            const double r = static_cast<double>(radius) * (0.3 + 0.7 * rng.real01());
            poly.push_back({static_cast<Coord>(r * std::cos(a)),
                            static_cast<Coord>(r * std::sin(a))});
        }
        try {
            validate_polygon(poly);
            return poly;
        } catch (const std::invalid_argument&) {
        }
    }
}

} // namespace

static void BM_DecomposeChains(benchmark::State& state) {
    Rng rng(1);
    const Polygon poly = star(rng, 1000, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose_chains(poly));
    }
}
BENCHMARK(BM_DecomposeChains)->Arg(8)->Arg(16)->Arg(32);

static void BM_ItemsOverlap(benchmark::State& state) {
    Rng rng(2);
    const int n = static_cast<int>(state.range(0));
    std::vector<ChainSet> shapes;
    for (int i = 0; i < 64; ++i) shapes.push_back(decompose_chains(star(rng, 500, n)));
    std::vector<Point> offsets;
    for (int i = 0; i < 256; ++i) {
        offsets.push_back({rng.uniform(-1200, 1200), rng.uniform(-1200, 1200)});
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const ChainSet& a = shapes[i % shapes.size()];
        const ChainSet& b = shapes[(i * 7 + 3) % shapes.size()];
        benchmark::DoNotOptimize(items_overlap(a, {0, 0}, b, offsets[i % offsets.size()]));
        ++i;
    }
}
BENCHMARK(BM_ItemsOverlap)->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
