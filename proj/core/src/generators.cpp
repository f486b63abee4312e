#include "polypack/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "polypack/rng.hpp"

namespace polypack {

ValuesMode values_mode_from_string(const std::string& s) {
    if (s == "unit") return ValuesMode::Unit;
    if (s == "random") return ValuesMode::Random;
    if (s == "area") return ValuesMode::Area;
    throw std::invalid_argument("unknown values mode: " + s + " (want unit|random|area)");
}

namespace {

std::int64_t pick_value(ValuesMode mode, Wide doubled_area, Rng& rng) {
    switch (mode) {
    case ValuesMode::Unit: return 1;
    case ValuesMode::Random: return rng.uniform(1, 20);
    case ValuesMode::Area:
        return std::max<std::int64_t>(1, static_cast<std::int64_t>(doubled_area / 20));
    }
    return 1;
}

} // namespace

Instance gen_tiling(int k, Coord cell, ValuesMode values, std::uint64_t seed) {
    if (k < 1 || cell < 1) throw std::invalid_argument("tiling: k and cell must be positive");
    Rng rng(seed);
    const Coord side = k * cell;
    Polygon container{{0, 0}, {side, 0}, {side, side}, {0, side}};
    RawItem item;
    item.poly = {{0, 0}, {cell, 0}, {cell, cell}, {0, cell}};
    item.value = pick_value(values, Wide(2) * cell * cell, rng);
    item.quantity = k * k;
    return Instance::create("tiling_k" + std::to_string(k) + "_s" + std::to_string(seed),
                            std::move(container), {std::move(item)});
}

namespace {

Polygon random_convex(Rng& rng, Coord extent, int max_points) {
    for (;;) {
        std::vector<Point> pts;
        const int n = static_cast<int>(rng.uniform(3, max_points));
        for (int i = 0; i < n; ++i) {
            pts.push_back({rng.uniform(0, extent), rng.uniform(0, extent)});
        }
        try {
            return convex_hull(pts);
        } catch (const std::invalid_argument&) {
            // collinear draw; try again
        }
    }
}

} // namespace

Instance gen_convex(int n_items, ValuesMode values, std::uint64_t seed) {
    if (n_items < 1) throw std::invalid_argument("convex: need at least one item");
    Rng rng(seed);
    const Coord container_extent =
        std::max<Coord>(240, static_cast<Coord>(70.0 * std::sqrt(static_cast<double>(n_items))));
    Polygon container = random_convex(rng, container_extent, 12);

    std::vector<RawItem> items;
    items.reserve(n_items);
    for (int i = 0; i < n_items; ++i) {
        const Coord extent = rng.uniform(12, 48);
        RawItem item;
        item.poly = random_convex(rng, extent, 8);
        item.value = pick_value(values, doubled_signed_area(item.poly), rng);
        item.quantity = static_cast<int>(rng.uniform(1, 3));
        items.push_back(std::move(item));
    }
    return Instance::create("convex_n" + std::to_string(n_items) + "_s" + std::to_string(seed),
                            std::move(container), std::move(items));
}

namespace {

using Cell = std::pair<int, int>;

// Boundary of a hole-free, pinch-free polyomino as a counterclockwise simple
// polygon with collinear vertices merged. Returns empty on holes/pinches.
Polygon trace_polyomino(const std::set<Cell>& cells) {
    auto has = [&](int x, int y) { return cells.count({x, y}) > 0; };

    // Pinch: a lattice corner surrounded by exactly a diagonal pair of cells.
    for (const auto& [x, y] : cells) {
        for (int cx = x; cx <= x + 1; ++cx) {
            for (int cy = y; cy <= y + 1; ++cy) {
                const bool sw = has(cx - 1, cy - 1), se = has(cx, cy - 1);
                const bool nw = has(cx - 1, cy), ne = has(cx, cy);
                if ((sw && ne && !se && !nw) || (se && nw && !sw && !ne)) return {};
            }
        }
    }

    std::map<Cell, Cell> next; // directed boundary edges, counterclockwise
    for (const auto& [x, y] : cells) {
        if (!has(x, y - 1)) next[{x, y}] = {x + 1, y};
        if (!has(x + 1, y)) next[{x + 1, y}] = {x + 1, y + 1};
        if (!has(x, y + 1)) next[{x + 1, y + 1}] = {x, y + 1};
        if (!has(x - 1, y)) next[{x, y + 1}] = {x, y};
    }

    std::vector<Cell> loop;
    const Cell start = next.begin()->first;
    Cell cur = start;
    do {
        loop.push_back(cur);
        auto it = next.find(cur);
        if (it == next.end()) return {};
        cur = it->second;
    } while (cur != start && loop.size() <= next.size());
    if (loop.size() != next.size()) return {}; // a second loop means a hole

    Polygon poly;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Cell& prev = loop[(i + loop.size() - 1) % loop.size()];
        const Cell& here = loop[i];
        const Cell& nxt = loop[(i + 1) % loop.size()];
        const bool straight = (here.first - prev.first == nxt.first - here.first) &&
                              (here.second - prev.second == nxt.second - here.second);
        if (!straight) poly.push_back({here.first, here.second});
    }
    return poly;
}

Polygon random_polyomino(Rng& rng, int max_cells, Coord scale) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::set<Cell> cells{{0, 0}};
        const int target = static_cast<int>(rng.uniform(1, max_cells));
        std::vector<Cell> list{{0, 0}};
        while (static_cast<int>(cells.size()) < target) {
            const Cell& base = list[rng.bounded(list.size())];
            static constexpr int dx[4] = {1, -1, 0, 0};
            static constexpr int dy[4] = {0, 0, 1, -1};
            const int d = static_cast<int>(rng.bounded(4));
            const Cell cand{base.first + dx[d], base.second + dy[d]};
            if (cells.insert(cand).second) list.push_back(cand);
        }
        Polygon poly = trace_polyomino(cells);
        if (poly.empty()) continue;
        for (Point& p : poly) {
            p.x *= scale;
            p.y *= scale;
        }
        return poly;
    }
    // A straight bar always traces cleanly.
    return {{0, 0}, {scale * max_cells, 0}, {scale * max_cells, scale}, {0, scale}};
}

} // namespace

Instance gen_polyomino(int n_items, int max_cells, ValuesMode values, std::uint64_t seed) {
    if (n_items < 1) throw std::invalid_argument("polyomino: need at least one item");
    if (max_cells < 1 || max_cells > 64) throw std::invalid_argument("polyomino: bad max_cells");
    Rng rng(seed);
    const Coord cell = 8;
    const Coord side = std::max<Coord>(
        6 * cell, static_cast<Coord>(
                      std::ceil(std::sqrt(static_cast<double>(n_items) * max_cells * 1.5)) *
                      cell));
    Polygon container{{0, 0}, {side, 0}, {side, side}, {0, side}};

    std::vector<RawItem> items;
    items.reserve(n_items);
    for (int i = 0; i < n_items; ++i) {
        RawItem item;
        item.poly = random_polyomino(rng, max_cells, cell);
        item.value = pick_value(values, doubled_signed_area(item.poly), rng);
        item.quantity = static_cast<int>(rng.uniform(1, 3));
        items.push_back(std::move(item));
    }
    return Instance::create("polyomino_n" + std::to_string(n_items) + "_s" + std::to_string(seed),
                            std::move(container), std::move(items));
}

} // namespace polypack
