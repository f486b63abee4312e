#include "polypack/greedy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polypack {

namespace {

// Lattice points with both coordinates multiples of pitch, inside or on the
// container. Stops early once `cap` points have been found (cap < 0: no cap).
std::vector<Point> lattice_points(const Polygon& container, const AABB& box, Coord pitch,
                                  std::int64_t cap) {
    std::vector<Point> pts;
    auto first_multiple = [pitch](Coord lo) {
        return lo >= 0 ? (lo + pitch - 1) / pitch * pitch : -(-lo / pitch) * pitch;
    };
    for (Coord x = first_multiple(box.min.x); x <= box.max.x; x += pitch) {
        for (Coord y = first_multiple(box.min.y); y <= box.max.y; y += pitch) {
            if (locate_in_convex(container, {x, y}) != PointLocation::Outside) {
                pts.push_back({x, y});
                if (cap >= 0 && static_cast<std::int64_t>(pts.size()) > cap) return pts;
            }
        }
    }
    return pts;
}

std::int64_t count_lattice(const Polygon& container, const AABB& box, Coord pitch,
                           std::int64_t cap) {
    return static_cast<std::int64_t>(lattice_points(container, box, pitch, cap).size());
}

} // namespace

PositionList build_position_list(const Polygon& container, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("position list needs n >= 1");
    const AABB box = bounding_box(container);
    const Wide area2 = doubled_signed_area(container);
    if (area2 <= 0) throw std::invalid_argument("degenerate container");

    // pitch ~ sqrt(area / n); search the neighbourhood for the count closest
    // to n without ever enumerating an excessive lattice.
    const double target = std::sqrt(static_cast<double>(area2) / 2.0 / n);
    Coord lo = std::max<Coord>(1, static_cast<Coord>(target / 4));
    const Coord span = std::max<Coord>({box.width(), box.height(), 1});
    const std::int64_t cap = 8LL * n + 64;
    while (lo > 1 && count_lattice(container, box, lo, cap) < n) lo = std::max<Coord>(1, lo / 2);
    Coord hi = std::max<Coord>(lo, span + 1);

    // Largest pitch still reaching n points (counts shrink as pitch grows).
    while (hi - lo > 1) {
        const Coord mid = lo + (hi - lo) / 2;
        if (count_lattice(container, box, mid, cap) >= n) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Coord pitch = lo;
    const std::int64_t count_lo = count_lattice(container, box, lo, cap);
    const std::int64_t count_hi = count_lattice(container, box, hi, cap);
    if (std::llabs(count_hi - n) < std::llabs(count_lo - n)) pitch = hi;

    PositionList list;
    list.pitch = pitch;
    list.points = lattice_points(container, box, pitch, -1);
    if (list.points.empty()) {
        // Pathologically thin container: fall back to its rounded centroid.
        list.points.push_back(centroid(container));
        return list;
    }
    rng.shuffle(list.points);

    Wide sx = 0, sy = 0;
    for (const Point& p : list.points) {
        sx += p.x;
        sy += p.y;
    }
    const Wide m = static_cast<Wide>(list.points.size());
    const Point c{round_div_half_away(sx, m), round_div_half_away(sy, m)};
    std::erase(list.points, c);
    list.points.insert(list.points.begin(), c);
    return list;
}

double utility(const ItemShape& item, UtilityKind kind) {
    const double value = static_cast<double>(item.value);
    const double area = item.metrics.area();
    switch (kind) {
    case UtilityKind::Value: return value;
    case UtilityKind::ValuePerArea: return value / area;
    case UtilityKind::Value15PerArea: return std::pow(value, 1.5) / area;
    case UtilityKind::ElongationWeighted: return (1.0 + item.metrics.elongation()) * value / area;
    }
    return value;
}

Vector diameter_normal(const ShapeMetrics& metrics, bool left) {
    const Vector d = metrics.diameter_b - metrics.diameter_a;
    Vector n = rot_ccw(d);
    const bool n_is_left = n.x < 0 || (n.x == 0 && n.y < 0);
    if (n_is_left != left) n = -n;
    return n;
}

namespace {

Vector edge_normal_right(Point a, Point b) {
    Vector n = rot_cw(b - a);
    if (n.x < 0 || (n.x == 0 && n.y < 0)) n = -n;
    return n;
}

} // namespace

Vector choose_push_direction(const ItemShape& item, PushStrategy strategy, Vector fixed_random_u,
                             Rng& rng) {
    switch (strategy) {
    case PushStrategy::FixedRandom: return fixed_random_u;
    case PushStrategy::DiameterNormalRandomSide:
        return diameter_normal(item.metrics, rng.chance(0.5));
    case PushStrategy::DiameterSkinnyLeftFatRight:
        return diameter_normal(item.metrics, item.metrics.is_skinny);
    case PushStrategy::DiameterPlusLongestEdge:
        if (item.metrics.is_skinny) return diameter_normal(item.metrics, true);
        return edge_normal_right(item.metrics.longest_edge_a, item.metrics.longest_edge_b);
    }
    return fixed_random_u;
}

std::vector<int> utility_order(const Instance& instance, UtilityKind kind) {
    std::vector<int> order(instance.items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<double> score(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) score[i] = utility(instance.items[i], kind);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return score[a] > score[b]; });
    return order;
}

std::int64_t greedy_fill(PackingState& state, const std::vector<int>& order,
                         const PositionList& positions, const GreedyConfig& cfg,
                         Vector fixed_random_u, Rng& rng) {
    const Instance& inst = state.instance();
    const Coord jitter =
        cfg.jitter_radius > 0 ? cfg.jitter_radius : std::max<Coord>(1, 2 * positions.pitch);
    std::int64_t gained = 0;

    for (int item_index : order) {
        const ItemShape& item = inst.items[item_index];
        const Point anchor = item.metrics.centroid;
        while (state.remaining(item_index) > 0) {
            std::optional<Point> found;
            for (const Point& g : positions.points) {
                const Point base = g - anchor;
                if (state.can_place(item_index, base)) {
                    found = base;
                    break;
                }
                for (int t = 0; t < cfg.random_tries_per_point && !found; ++t) {
                    const Point probe{base.x + rng.uniform(-jitter, jitter),
                                      base.y + rng.uniform(-jitter, jitter)};
                    if (state.can_place(item_index, probe)) found = probe;
                }
                if (found) break;
            }
            if (!found) break; // no position in L works; later copies cannot either
            const int id = state.place(item_index, *found);
            gained += item.value;
            if (cfg.push_after_place) {
                const Vector u = choose_push_direction(item, cfg.push_strategy, fixed_random_u, rng);
                push(state, id, u, cfg.push);
            }
        }
    }
    return gained;
}

Solution greedy_pack(const Instance& instance, const GreedyConfig& cfg) {
    Rng rng(cfg.seed);
    PositionList positions = build_position_list(instance.container, cfg.n_grid_points, rng);

    // The fixed direction for strategy 1, drawn once per run.
    const double angle = rng.real01() * 2.0 * std::numbers::pi;
    Vector fixed_u{static_cast<Coord>(std::llround(std::cos(angle) * 1024)),
                   static_cast<Coord>(std::llround(std::sin(angle) * 1024))};
    if (fixed_u == Vector{0, 0}) fixed_u = {1024, 0};

    PackingState state(instance);
    greedy_fill(state, utility_order(instance, cfg.utility), positions, cfg, fixed_u, rng);
    return state.to_solution();
}

} // namespace polypack
