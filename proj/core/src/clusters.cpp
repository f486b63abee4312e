#include "polypack/clusters.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "polypack/push.hpp"

namespace polypack {

namespace {

bool members_disjoint(const std::vector<ClusterMember>& members, const Instance& inst) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (items_overlap(inst.items[members[i].item_index].chains, members[i].offset,
                              inst.items[members[j].item_index].chains, members[j].offset)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

Cluster make_cluster(std::vector<ClusterMember> members, const Instance& instance,
                     const ClusterConfig& cfg, Rng& rng) {
    assert(!members.empty());
    Cluster c;
    c.members = std::move(members);
    std::vector<Point> pts;
    for (const ClusterMember& m : c.members) {
        const ItemShape& item = instance.items[m.item_index];
        c.union_value += item.value;
        c.sum_item_doubled_area += item.metrics.doubled_area;
        for (const Point& p : item.poly) pts.push_back(p + m.offset);
    }
    c.hull = convex_hull(pts);
    c.hull_chains = decompose_chains(c.hull);
    c.hull_metrics = compute_metrics(c.hull);
    c.hull_doubled_area = c.hull_metrics.doubled_area;
    c.utility = cluster_utility(c, instance, cfg, rng);
    return c;
}

Cluster single_item_cluster(int item_index, const Instance& instance, const ClusterConfig& cfg,
                            Rng& rng) {
    return make_cluster({{item_index, {0, 0}}}, instance, cfg, rng);
}

double compute_penalty(const Cluster& c, const Instance& instance, double penalty_floor) {
    const double hull_thickness = c.hull_metrics.thickness();
    double max_member = 0.0;
    for (const ClusterMember& m : c.members) {
        max_member = std::max(max_member, instance.items[m.item_index].metrics.thickness());
    }
    const double penalty = std::min(1.0, hull_thickness / max_member);
    return std::max(penalty_floor, penalty);
}

double cluster_utility(const Cluster& c, const Instance& instance, const ClusterConfig& cfg,
                       Rng& rng) {
    double gauss = 1.0;
    if (cfg.gauss_sigma > 0.0) {
        gauss = std::clamp(rng.gaussian(1.0, cfg.gauss_sigma), 0.5, 1.5);
    }
    double area = static_cast<double>(c.hull_doubled_area) / 2.0;
    if (cfg.area_mode == AreaMode::WeightedMix) {
        area = cfg.lambda * area +
               (1.0 - cfg.lambda) * static_cast<double>(c.sum_item_doubled_area) / 2.0;
    }
    const double penalty = compute_penalty(c, instance, cfg.penalty_floor);
    return gauss * std::pow(static_cast<double>(c.union_value), cfg.alpha) * penalty / area;
}

CompatGraph build_rand_graph(const Instance& instance, const ClusterConfig& cfg, Rng& rng) {
    const int n = static_cast<int>(instance.items.size());
    CompatGraph g{CompatKind::Rand, std::vector<std::vector<int>>(n)};
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    const int group = std::max(2, cfg.rand_group_size);
    for (int start = 0; start < n; start += group) {
        const int end = std::min(n, start + group);
        for (int i = start; i < end; ++i) {
            for (int j = i + 1; j < end; ++j) {
                g.adj[perm[i]].push_back(perm[j]);
                g.adj[perm[j]].push_back(perm[i]);
            }
        }
    }
    for (auto& list : g.adj) std::sort(list.begin(), list.end());
    return g;
}

namespace {

// Angle of a direction in [0, pi), bucketed into 16 slots.
int angle_bucket(Vector v) {
    double a = std::atan2(static_cast<double>(v.y), static_cast<double>(v.x));
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    return std::min(15, static_cast<int>(a / (std::numbers::pi / 16.0)));
}

bool is_skinny_for_ratio(const ShapeMetrics& m, double ratio) {
    if (ratio == 3.0) return m.is_skinny; // exact integer decision
    return static_cast<double>(m.diameter_sq) > ratio * static_cast<double>(m.width_num);
}

} // namespace

CompatGraph build_skinny_graph(const Instance& instance, const ClusterConfig& cfg) {
    const int n = static_cast<int>(instance.items.size());
    CompatGraph g{CompatKind::Skinny, std::vector<std::vector<int>>(n)};
    std::vector<std::vector<int>> buckets(16);
    for (int i = 0; i < n; ++i) {
        const ShapeMetrics& m = instance.items[i].metrics;
        if (!is_skinny_for_ratio(m, cfg.skinny_ratio)) continue;
        buckets[angle_bucket(m.longest_edge_b - m.longest_edge_a)].push_back(i);
    }
    auto connect = [&](const std::vector<int>& a, const std::vector<int>& b) {
        for (int i : a) {
            for (int j : b) {
                if (i == j) continue;
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
            }
        }
    };
    for (int b = 0; b < 16; ++b) {
        for (std::size_t i = 0; i < buckets[b].size(); ++i) {
            for (std::size_t j = i + 1; j < buckets[b].size(); ++j) {
                g.adj[buckets[b][i]].push_back(buckets[b][j]);
                g.adj[buckets[b][j]].push_back(buckets[b][i]);
            }
        }
        connect(buckets[b], buckets[(b + 1) % 16]);
    }
    for (auto& list : g.adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return g;
}

namespace {

struct Pocket {
    Wide doubled_area = 0; // positive
    AABB box;
};

// Pockets of a simple polygon: regions between the boundary and a convex hull
// bridge. Hull vertices appear along the polygon in hull order, so each run
// of non-hull vertices between consecutive hull vertices is one pocket.
std::vector<Pocket> find_pockets(const Polygon& poly) {
    std::vector<Pocket> pockets;
    Polygon hull;
    try {
        hull = convex_hull(poly);
    } catch (const std::invalid_argument&) {
        return pockets;
    }
    std::set<Point> on_hull(hull.begin(), hull.end());
    const std::size_t n = poly.size();
    std::size_t first_hull = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (on_hull.count(poly[i])) {
            first_hull = i;
            break;
        }
    }
    if (first_hull == n) return pockets;

    std::vector<Point> run{poly[first_hull]};
    for (std::size_t step = 1; step <= n; ++step) {
        const Point& p = poly[(first_hull + step) % n];
        run.push_back(p);
        if (on_hull.count(p)) {
            if (run.size() > 2) {
                Pocket pocket;
                pocket.doubled_area = doubled_signed_area(run);
                if (pocket.doubled_area < 0) pocket.doubled_area = -pocket.doubled_area;
                pocket.box = bounding_box(run);
                if (pocket.doubled_area > 0) pockets.push_back(pocket);
            }
            run = {p};
        }
    }
    return pockets;
}

} // namespace

CompatGraph build_concav_graph(const Instance& instance) {
    const int n = static_cast<int>(instance.items.size());
    CompatGraph g{CompatKind::Concav, std::vector<std::vector<int>>(n)};
    std::vector<std::vector<Pocket>> pockets(n);
    for (int i = 0; i < n; ++i) {
        for (const Pocket& p : find_pockets(instance.items[i].poly)) {
            // keep pockets of at least 10% of the item area
            if (10 * p.doubled_area >= instance.items[i].metrics.doubled_area) {
                pockets[i].push_back(p);
            }
        }
    }
    auto fits = [&](const Pocket& pocket, int item) {
        return pocket.box.width() >= instance.items[item].box.width() &&
               pocket.box.height() >= instance.items[item].box.height();
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool edge = false;
            for (const Pocket& p : pockets[i]) {
                if (fits(p, j)) {
                    edge = true;
                    break;
                }
            }
            for (const Pocket& p : pockets[j]) {
                if (edge) break;
                if (fits(p, i)) edge = true;
            }
            if (edge) {
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
            }
        }
    }
    return g;
}

CompatGraph build_shear_graph(const Instance& instance) {
    const int n = static_cast<int>(instance.items.size());
    CompatGraph g{CompatKind::Shear, std::vector<std::vector<int>>(n)};
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
        const Polygon& poly = instance.items[i].poly;
        double length[16] = {};
        for (std::size_t e = 0; e < poly.size(); ++e) {
            const Vector v = poly[(e + 1) % poly.size()] - poly[e];
            length[angle_bucket(v)] += std::sqrt(static_cast<double>(squared_length(v)));
        }
        int best = 0, second = -1;
        for (int b = 1; b < 16; ++b) {
            if (length[b] > length[best]) {
                second = best;
                best = b;
            } else if (second < 0 || length[b] > length[second]) {
                second = b;
            }
        }
        if (second < 0 || length[second] == 0.0) second = best;
        groups[{std::min(best, second), std::max(best, second)}].push_back(i);
    }
    for (const auto& [key, items] : groups) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (std::size_t j = i + 1; j < items.size(); ++j) {
                g.adj[items[i]].push_back(items[j]);
                g.adj[items[j]].push_back(items[i]);
            }
        }
    }
    for (auto& list : g.adj) std::sort(list.begin(), list.end());
    return g;
}

namespace {

using CellSet = std::set<std::pair<int, int>>;

// Fills the cell set enclosed by a closed rectilinear integer polygon.
CellSet cells_of_rectilinear(const Polygon& snapped) {
    CellSet cells;
    const AABB box = bounding_box(snapped);
    for (Coord x = box.min.x; x < box.max.x; ++x) {
        for (Coord y = box.min.y; y < box.max.y; ++y) {
            // test the cell center with doubled coordinates
            Polygon doubled = snapped;
            for (Point& p : doubled) {
                p.x *= 2;
                p.y *= 2;
            }
            if (locate_point(doubled, {2 * x + 1, 2 * y + 1}) == PointLocation::Inside) {
                cells.insert({static_cast<int>(x), static_cast<int>(y)});
            }
        }
    }
    return cells;
}

ShapeClass classify_cells(const CellSet& cells) {
    if (cells.empty()) return ShapeClass::Other;
    auto has = [&](int x, int y) { return cells.count({x, y}) > 0; };

    // Bar: a straight line of at least two cells.
    if (cells.size() >= 2) {
        bool one_row = true, one_col = true;
        const auto& [x0, y0] = *cells.begin();
        for (const auto& [x, y] : cells) {
            one_row &= (y == y0);
            one_col &= (x == x0);
        }
        if (one_row || one_col) return ShapeClass::Bar;
    }

    // Cross / Ell: all cells on the row and column through some corner cell.
    for (const auto& [cx, cy] : cells) {
        bool on_lines = true;
        bool left = false, right = false, down = false, up = false;
        for (const auto& [x, y] : cells) {
            if (x != cx && y != cy) {
                on_lines = false;
                break;
            }
            left |= x < cx;
            right |= x > cx;
            down |= y < cy;
            up |= y > cy;
        }
        if (!on_lines) continue;
        const int arms = int(left) + int(right) + int(down) + int(up);
        if (arms == 4) return ShapeClass::Cross;
        if (arms == 2 && (left || right) && (down || up)) return ShapeClass::Ell;
        if (arms == 3) {
            // a T-junction at the corner cell counts as a Y-like shape
            return ShapeClass::Wye;
        }
    }

    // Path-shaped sets: waves (staircases) and Y-shapes (line plus one bump).
    std::vector<std::pair<int, int>> ends;
    int max_degree = 0;
    std::pair<int, int> junction{0, 0};
    int junction_count = 0;
    for (const auto& [x, y] : cells) {
        const int deg = int(has(x + 1, y)) + int(has(x - 1, y)) + int(has(x, y + 1)) +
                        int(has(x, y - 1));
        max_degree = std::max(max_degree, deg);
        if (deg <= 1) ends.push_back({x, y});
        if (deg >= 3) {
            junction = {x, y};
            ++junction_count;
        }
    }
    if (max_degree <= 2 && ends.size() == 2) {
        // walk the path and record step directions
        std::vector<std::pair<int, int>> path{ends[0]};
        CellSet seen{ends[0]};
        while (path.size() < cells.size()) {
            const auto& [x, y] = path.back();
            bool advanced = false;
            static constexpr int dx[4] = {1, -1, 0, 0};
            static constexpr int dy[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                const std::pair<int, int> nxt{x + dx[d], y + dy[d]};
                if (cells.count(nxt) && !seen.count(nxt)) {
                    path.push_back(nxt);
                    seen.insert(nxt);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        if (path.size() == cells.size()) {
            std::set<std::pair<int, int>> dirs;
            int changes = 0;
            for (std::size_t i = 1; i < path.size(); ++i) {
                const std::pair<int, int> d{path[i].first - path[i - 1].first,
                                            path[i].second - path[i - 1].second};
                dirs.insert(d);
                if (i >= 2) {
                    const std::pair<int, int> prev{path[i - 1].first - path[i - 2].first,
                                                   path[i - 1].second - path[i - 2].second};
                    if (d != prev) ++changes;
                }
            }
            if (dirs.size() == 2 && changes >= 2) return ShapeClass::Wave;
        }
    }
    if (junction_count == 1) {
        // line plus a single bump adjacent to it: Y-like
        const auto [jx, jy] = junction;
        for (const bool horizontal : {true, false}) {
            std::size_t on_line = 0;
            for (const auto& [x, y] : cells) {
                if ((horizontal && y == jy) || (!horizontal && x == jx)) ++on_line;
            }
            if (on_line == cells.size() - 1) return ShapeClass::Wye;
        }
    }
    return ShapeClass::Other;
}

} // namespace

ContourWord contour_word(const ItemShape& item) {
    ContourWord word;
    const Polygon& poly = item.poly;

    std::vector<double> edge_lengths;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        edge_lengths.push_back(std::sqrt(static_cast<double>(
            squared_distance(poly[i], poly[(i + 1) % poly.size()]))));
    }
    // Lower median: elongated polyominoes (bars) have as many long edges as
    // short ones, and the cell unit is the short one.
    const std::size_t mid = (edge_lengths.size() - 1) / 2;
    std::nth_element(edge_lengths.begin(), edge_lengths.begin() + mid, edge_lengths.end());
    const double unit = edge_lengths[mid];
    if (unit <= 0.0) return word;

    Polygon snapped;
    for (const Point& p : poly) {
        const Point q{static_cast<Coord>(std::llround(p.x / unit)),
                      static_cast<Coord>(std::llround(p.y / unit))};
        if (snapped.empty() || !(snapped.back() == q)) snapped.push_back(q);
    }
    while (snapped.size() > 1 && snapped.front() == snapped.back()) snapped.pop_back();
    if (snapped.size() < 4) return word;

    for (std::size_t i = 0; i < snapped.size(); ++i) {
        const Point a = snapped[i];
        const Point b = snapped[(i + 1) % snapped.size()];
        const Coord dx = b.x - a.x, dy = b.y - a.y;
        if ((dx != 0) == (dy != 0)) return word; // not axis-parallel
        const char letter = dx > 0 ? 'R' : (dx < 0 ? 'L' : (dy > 0 ? 'U' : 'D'));
        for (Coord s = 0; s < std::max(std::abs(dx), std::abs(dy)); ++s) {
            word.letters.push_back(letter);
        }
    }
    if (doubled_signed_area(snapped) <= 0) return word;

    word.closed = true;
    word.shape_class = classify_cells(cells_of_rectilinear(snapped));
    return word;
}

CompatGraph build_atris_graph(const Instance& instance) {
    const int n = static_cast<int>(instance.items.size());
    CompatGraph g{CompatKind::Atris, std::vector<std::vector<int>>(n)};
    std::vector<ShapeClass> cls(n, ShapeClass::Other);
    std::vector<bool> usable(n, false);
    for (int i = 0; i < n; ++i) {
        const ContourWord w = contour_word(instance.items[i]);
        cls[i] = w.shape_class;
        usable[i] = w.closed; // snap failures stay isolated
    }
    auto complementary = [](ShapeClass a, ShapeClass b) {
        if (a == ShapeClass::Bar || b == ShapeClass::Bar) return true; // every class pairs with bars
        if (a == b && (a == ShapeClass::Ell || a == ShapeClass::Wave || a == ShapeClass::Wye)) {
            return true;
        }
        if ((a == ShapeClass::Cross && b == ShapeClass::Ell) ||
            (a == ShapeClass::Ell && b == ShapeClass::Cross)) {
            return true;
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        if (!usable[i]) continue;
        for (int j = i + 1; j < n; ++j) {
            if (!usable[j]) continue;
            if (complementary(cls[i], cls[j])) {
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
            }
        }
    }
    return g;
}

namespace {

bool placement_overlaps_cluster(const Cluster& c, const ItemShape& item, Point offset,
                                const Instance& inst) {
    for (const ClusterMember& m : c.members) {
        if (items_overlap(item.chains, offset, inst.items[m.item_index].chains, m.offset)) {
            return true;
        }
    }
    return false;
}

std::optional<Cluster> best_augmentation(const Cluster& c, int item_index,
                                         const Instance& instance, const ClusterConfig& cfg,
                                         Rng& rng, const std::vector<Point>& offsets) {
    const ItemShape& item = instance.items[item_index];
    std::optional<Cluster> best;
    for (const Point& t : offsets) {
        if (placement_overlaps_cluster(c, item, t, instance)) continue;
        std::vector<ClusterMember> members = c.members;
        members.push_back({item_index, t});
        Cluster cand = make_cluster(std::move(members), instance, cfg, rng);
        if (!best || cand.utility > best->utility) best = std::move(cand);
    }
    return best;
}

} // namespace

std::optional<Cluster> assemble_grid(const Cluster& c, int item_index, const Instance& instance,
                                     const ClusterConfig& cfg, Rng& rng) {
    const ItemShape& item = instance.items[item_index];
    const AABB hull_box = bounding_box(c.hull);
    const Coord x_lo = hull_box.min.x - item.box.max.x;
    const Coord x_hi = hull_box.max.x - item.box.min.x;
    const Coord y_lo = hull_box.min.y - item.box.max.y;
    const Coord y_hi = hull_box.max.y - item.box.min.y;
    const double area = static_cast<double>(x_hi - x_lo) * static_cast<double>(y_hi - y_lo);
    const int points = std::clamp(cfg.grid_points_assembly, 100, 1000);
    const Coord pitch =
        std::max<Coord>(1, static_cast<Coord>(std::llround(std::sqrt(area / points))));
    // Lattice centered on the cluster, spanning the hull box inflated by the
    // item box.
    const Coord cx = round_div_half_away(Wide(x_lo) + x_hi, 2);
    const Coord cy = round_div_half_away(Wide(y_lo) + y_hi, 2);
    std::vector<Point> offsets;
    for (Coord x = cx - (cx - x_lo) / pitch * pitch; x <= x_hi; x += pitch) {
        for (Coord y = cy - (cy - y_lo) / pitch * pitch; y <= y_hi; y += pitch) {
            offsets.push_back({x, y});
        }
    }
    return best_augmentation(c, item_index, instance, cfg, rng, offsets);
}

std::optional<Cluster> assemble_vertex(const Cluster& c, int item_index, const Instance& instance,
                                       const ClusterConfig& cfg, Rng& rng) {
    const ItemShape& item = instance.items[item_index];
    std::vector<Point> offsets;
    for (const ClusterMember& m : c.members) {
        for (const Point& cv : instance.items[m.item_index].poly) {
            const Point target = cv + m.offset;
            for (const Point& iv : item.poly) {
                offsets.push_back(target - iv);
            }
        }
    }
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    return best_augmentation(c, item_index, instance, cfg, rng, offsets);
}

ClusterPool generate_clusters(const Instance& instance, const std::vector<CompatGraph>& graphs,
                              const ClusterConfig& cfg, Rng& rng) {
    const int n = static_cast<int>(instance.items.size());
    // merged adjacency over all supplied graphs
    std::vector<std::vector<int>> adj(n);
    for (const CompatGraph& g : graphs) {
        for (int i = 0; i < n && i < static_cast<int>(g.adj.size()); ++i) {
            adj[i].insert(adj[i].end(), g.adj[i].begin(), g.adj[i].end());
        }
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    const bool grid_allowed = cfg.use_grid_assembly && n <= cfg.grid_assembly_item_limit;

    ClusterPool pool;
    std::vector<Cluster> current;
    for (int i = 0; i < n; ++i) current.push_back(single_item_cluster(i, instance, cfg, rng));

    for (int gen = 2; gen <= cfg.max_generation; ++gen) {
        std::vector<Cluster> candidates;
        for (const Cluster& c : current) {
            std::vector<int> item_count(n, 0);
            std::vector<int> neighbors;
            for (const ClusterMember& m : c.members) {
                ++item_count[m.item_index];
                neighbors.insert(neighbors.end(), adj[m.item_index].begin(),
                                 adj[m.item_index].end());
            }
            std::sort(neighbors.begin(), neighbors.end());
            neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
            for (int item : neighbors) {
                if (item_count[item] >= instance.items[item].quantity) continue;
                std::optional<Cluster> best;
                if (grid_allowed) {
                    best = assemble_grid(c, item, instance, cfg, rng);
                }
                if (cfg.use_vertex_assembly) {
                    std::optional<Cluster> v = assemble_vertex(c, item, instance, cfg, rng);
                    if (v && (!best || v->utility > best->utility)) best = std::move(v);
                }
                if (best) candidates.push_back(std::move(*best));
            }
        }
        if (candidates.empty()) break;

        // Retain, per item, the m best candidates containing it.
        std::vector<std::vector<std::pair<double, int>>> per_item(n);
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            std::set<int> items;
            for (const ClusterMember& m : candidates[k].members) items.insert(m.item_index);
            for (int item : items) {
                per_item[item].push_back({candidates[k].utility, static_cast<int>(k)});
            }
        }
        std::vector<bool> keep(candidates.size(), false);
        for (int item = 0; item < n; ++item) {
            auto& list = per_item[item];
            std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
                return a.first > b.first;
            });
            for (std::size_t k = 0; k < list.size() && k < static_cast<std::size_t>(cfg.m_per_item);
                 ++k) {
                keep[list[k].second] = true;
            }
        }
        std::vector<Cluster> retained;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (keep[k]) retained.push_back(std::move(candidates[k]));
        }
        pool.clusters.insert(pool.clusters.end(), retained.begin(), retained.end());
        current = std::move(retained);
    }
    return pool;
}

std::vector<PackUnit> clusters_as_items(const ClusterPool& pool, const Instance& instance,
                                        const ClusterConfig& cfg, Rng& rng) {
    std::vector<PackUnit> units;
    units.reserve(pool.clusters.size() + instance.items.size());
    for (const Cluster& c : pool.clusters) {
        units.push_back({c, c.utility});
    }
    for (std::size_t i = 0; i < instance.items.size(); ++i) {
        Cluster c = single_item_cluster(static_cast<int>(i), instance, cfg, rng);
        const double u = c.utility;
        units.push_back({std::move(c), u});
    }
    std::stable_sort(units.begin(), units.end(), [](const PackUnit& a, const PackUnit& b) {
        return a.sort_utility > b.sort_utility;
    });
    return units;
}

Solution greedy_pack_with_clusters(const Instance& instance, const ClusterPool& pool,
                                   const GreedyConfig& greedy, const ClusterConfig& cfg) {
    Rng rng(greedy.seed);
    PositionList positions = build_position_list(instance.container, greedy.n_grid_points, rng);
    const Coord jitter =
        greedy.jitter_radius > 0 ? greedy.jitter_radius : std::max<Coord>(1, 2 * positions.pitch);

    const double angle = rng.real01() * 2.0 * std::numbers::pi;
    Vector fixed_u{static_cast<Coord>(std::llround(std::cos(angle) * 1024)),
                   static_cast<Coord>(std::llround(std::sin(angle) * 1024))};
    if (fixed_u == Vector{0, 0}) fixed_u = {1024, 0};

    std::vector<PackUnit> units = clusters_as_items(pool, instance, cfg, rng);
    PackingState state(instance);

    std::vector<int> placed_ids;
    for (const PackUnit& unit : units) {
        const Cluster& c = unit.cluster;
        const Point anchor = c.hull_metrics.centroid;

        auto enough_copies = [&] {
            std::vector<std::pair<int, int>> need; // (item, count)
            for (const ClusterMember& m : c.members) {
                bool found = false;
                for (auto& [item, count] : need) {
                    if (item == m.item_index) {
                        ++count;
                        found = true;
                    }
                }
                if (!found) need.push_back({m.item_index, 1});
            }
            for (const auto& [item, count] : need) {
                if (state.remaining(item) < count) return false;
            }
            return true;
        };

        auto try_place_at = [&](Point t) -> bool {
            if (!inside_container(c.hull_chains, t, instance.container)) return false;
            for (const ClusterMember& m : c.members) {
                if (!state.valid_position(m.item_index, m.offset + t)) return false;
            }
            placed_ids.clear();
            for (const ClusterMember& m : c.members) {
                placed_ids.push_back(state.place(m.item_index, m.offset + t));
            }
            return true;
        };

        bool unit_alive = true;
        while (unit_alive && enough_copies()) {
            bool placed = false;
            for (const Point& g : positions.points) {
                const Point base = g - anchor;
                if (try_place_at(base)) {
                    placed = true;
                } else {
                    for (int t = 0; t < greedy.random_tries_per_point && !placed; ++t) {
                        const Point probe{base.x + rng.uniform(-jitter, jitter),
                                          base.y + rng.uniform(-jitter, jitter)};
                        placed = try_place_at(probe);
                    }
                }
                if (placed) break;
            }
            if (!placed) {
                unit_alive = false;
                break;
            }
            if (greedy.push_after_place) {
                const Vector u = [&] {
                    switch (greedy.push_strategy) {
                    case PushStrategy::FixedRandom: return fixed_u;
                    case PushStrategy::DiameterNormalRandomSide:
                        return diameter_normal(c.hull_metrics, rng.chance(0.5));
                    case PushStrategy::DiameterSkinnyLeftFatRight:
                        return diameter_normal(c.hull_metrics, c.hull_metrics.is_skinny);
                    case PushStrategy::DiameterPlusLongestEdge:
                        if (c.hull_metrics.is_skinny) return diameter_normal(c.hull_metrics, true);
                        return diameter_normal(c.hull_metrics, false);
                    }
                    return fixed_u;
                }();
                if (placed_ids.size() == 1) {
                    push(state, placed_ids[0], u, greedy.push);
                } else {
                    push_group(state, placed_ids, u, greedy.push);
                }
            }
        }
    }
    return state.to_solution();
}

std::string cluster_pool_to_json(const ClusterPool& pool, const std::string& instance_name) {
    nlohmann::json j;
    j["type"] = "polypack_clusters";
    j["version"] = 1;
    j["instance_name"] = instance_name;
    nlohmann::json clusters = nlohmann::json::array();
    for (const Cluster& c : pool.clusters) {
        nlohmann::json jc;
        nlohmann::json items = nlohmann::json::array();
        nlohmann::json dx = nlohmann::json::array();
        nlohmann::json dy = nlohmann::json::array();
        for (const ClusterMember& m : c.members) {
            items.push_back(m.item_index);
            dx.push_back(m.offset.x);
            dy.push_back(m.offset.y);
        }
        jc["items"] = std::move(items);
        jc["dx"] = std::move(dx);
        jc["dy"] = std::move(dy);
        jc["utility"] = c.utility;
        clusters.push_back(std::move(jc));
    }
    j["clusters"] = std::move(clusters);
    return j.dump(2) + "\n";
}

ClusterPool parse_cluster_pool_json(const std::string& text, const Instance& instance) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("cluster JSON parse error: ") + e.what());
    }
    if (j.value("type", "") != "polypack_clusters" || j.value("version", 0) != 1) {
        throw std::runtime_error("cluster JSON: unknown type/version");
    }
    ClusterPool pool;
    ClusterConfig cfg;
    Rng rng(1);
    for (const auto& jc : j.value("clusters", nlohmann::json::array())) {
        const auto& items = jc.at("items");
        const auto& dx = jc.at("dx");
        const auto& dy = jc.at("dy");
        if (items.size() != dx.size() || items.size() != dy.size()) {
            throw std::runtime_error("cluster JSON: member array length mismatch");
        }
        std::vector<ClusterMember> members;
        for (std::size_t i = 0; i < items.size(); ++i) {
            const int item = items[i].get<int>();
            if (item < 0 || item >= static_cast<int>(instance.items.size())) {
                throw std::runtime_error("cluster JSON: item index out of range");
            }
            members.push_back({item, {dx[i].get<Coord>(), dy[i].get<Coord>()}});
        }
        if (members.empty()) throw std::runtime_error("cluster JSON: empty cluster");
        if (!members_disjoint(members, instance)) {
            throw std::runtime_error("cluster JSON: members overlap");
        }
        Cluster c = make_cluster(std::move(members), instance, cfg, rng);
        if (jc.contains("utility")) c.utility = jc.at("utility").get<double>();
        pool.clusters.push_back(std::move(c));
    }
    return pool;
}

void save_cluster_pool(const ClusterPool& pool, const std::string& instance_name,
                       const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << cluster_pool_to_json(pool, instance_name);
    if (!out) throw std::runtime_error("write failed: " + path);
}

ClusterPool load_cluster_pool(const std::string& path, const Instance& instance) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_cluster_pool_json(text, instance);
}

} // namespace polypack
