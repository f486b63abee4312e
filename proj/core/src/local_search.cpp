#include "polypack/local_search.hpp"

#include <algorithm>
#include <chrono>

namespace polypack {

std::int64_t fill(PackingState& state, const PositionList& positions, const GreedyConfig& greedy,
                  Rng& rng) {
    const std::vector<int> order = utility_order(state.instance(), greedy.utility);
    return greedy_fill(state, order, positions, greedy, {1024, 0}, rng);
}

namespace {

// Grid points sorted by distance to v, nearest first, capped at `count`.
std::vector<Point> nearest_positions(const PositionList& positions, Point v, int count) {
    std::vector<Point> pts = positions.points;
    std::stable_sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
        return squared_distance(a, v) < squared_distance(b, v);
    });
    if (static_cast<int>(pts.size()) > count) pts.resize(count);
    return pts;
}

} // namespace

std::int64_t dig(PackingState& state, Point v, const LsConfig& cfg, const PositionList& positions,
                 const GreedyConfig& greedy, Rng& rng) {
    const Instance& inst = state.instance();

    // Eligible packed items, sorted by centroid distance to v descending.
    std::vector<int> ids = state.live_ids();
    if (cfg.dig_radius) {
        const Wide r2 = Wide(*cfg.dig_radius) * *cfg.dig_radius;
        std::erase_if(ids, [&](int id) {
            return squared_distance(state.placement_centroid(id), v) > r2;
        });
    }
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        return squared_distance(state.placement_centroid(a), v) >
               squared_distance(state.placement_centroid(b), v);
    });
    if (cfg.dig_max_items && static_cast<int>(ids.size()) > *cfg.dig_max_items) {
        // keep the nearest k
        ids.erase(ids.begin(), ids.end() - *cfg.dig_max_items);
    }
    for (int id : ids) {
        const Vector u = state.placement_centroid(id) - v;
        if (u == Vector{0, 0}) continue;
        push(state, id, u, greedy.push);
    }

    // Refill around v: nearest grid points first, with jittered probes, and
    // replacements when the value benefit is non-negative.
    const std::vector<Point> probes = nearest_positions(positions, v, cfg.fill_tries);
    const Coord jitter =
        greedy.jitter_radius > 0 ? greedy.jitter_radius : std::max<Coord>(1, 2 * positions.pitch);
    const std::vector<int> order = utility_order(inst, greedy.utility);

    std::int64_t net = 0;
    std::vector<int> overlap_set;
    std::vector<int> cands;
    for (int item_index : order) {
        const ItemShape& item = inst.items[item_index];
        const Point anchor = item.metrics.centroid;
        // Zero-benefit replacements keep the remaining count unchanged, so
        // bound the attempts by the copy count at entry.
        const int attempts = state.remaining(item_index);
        for (int attempt = 0; attempt < attempts && state.remaining(item_index) > 0; ++attempt) {
            bool placed_one = false;
            for (const Point& g : probes) {
                for (int t = 0; t <= greedy.random_tries_per_point; ++t) {
                    Point pos = g - anchor;
                    if (t > 0) {
                        pos.x += rng.uniform(-jitter, jitter);
                        pos.y += rng.uniform(-jitter, jitter);
                    }
                    if (state.can_place(item_index, pos)) {
                        state.place(item_index, pos);
                        net += item.value;
                        placed_one = true;
                        break;
                    }
                    // Replacement: would removing the overlapped items pay?
                    if (!inside_container(item.chains, pos, inst.container)) continue;
                    state.grid().query(item.box.translated(pos), cands);
                    overlap_set.clear();
                    std::int64_t removed_value = 0;
                    for (int id : cands) {
                        const auto& slot = state.slot(id);
                        if (items_overlap(item.chains, pos, inst.items[slot.item].chains,
                                          slot.pos)) {
                            overlap_set.push_back(id);
                            removed_value += inst.items[slot.item].value;
                        }
                    }
                    if (overlap_set.empty() || item.value - removed_value < 0) continue;
                    for (int id : overlap_set) state.unplace(id);
                    state.place(item_index, pos);
                    net += item.value - removed_value;
                    placed_one = true;
                    break;
                }
                if (placed_one) break;
            }
            if (!placed_one) break;
        }
    }
    return net;
}

Solution optimize(PackingState& state, const LsConfig& cfg, const PositionList& positions,
                  const GreedyConfig& greedy, std::vector<TraceEntry>* trace) {
    Rng rng(cfg.seed);
    const Instance& inst = state.instance();
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    Solution best = state.to_solution();
    std::int64_t best_value = state.total_value();
    if (trace) trace->push_back({0.0, 0, best_value});

    std::int64_t iteration = 0;
    for (;;) {
        if (cfg.iteration_budget > 0 && iteration >= cfg.iteration_budget) break;
        if (cfg.time_limit_seconds > 0.0 && elapsed() >= cfg.time_limit_seconds) break;
        if (cfg.iteration_budget <= 0 && cfg.time_limit_seconds <= 0.0) break;
        ++iteration;

        if (rng.chance(cfg.p_fill)) {
            fill(state, positions, greedy, rng);
        } else {
            Point v;
            if (rng.chance(cfg.p_vertex_dig)) {
                v = inst.container[rng.bounded(inst.container.size())];
            } else {
                // rejection-sample an interior point over the container box
                const AABB& box = inst.container_box;
                do {
                    v = {rng.uniform(box.min.x, box.max.x), rng.uniform(box.min.y, box.max.y)};
                } while (locate_in_convex(inst.container, v) == PointLocation::Outside);
            }
            dig(state, v, cfg, positions, greedy, rng);
        }

        if (state.total_value() > best_value) {
            best_value = state.total_value();
            best = state.to_solution();
        }
        if (trace) trace->push_back({elapsed(), iteration, best_value});
    }
    return best;
}

} // namespace polypack
