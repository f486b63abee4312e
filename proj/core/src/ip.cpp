#include "polypack/ip.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "polypack/spatial_grid.hpp"

namespace polypack {

CandidateSet sample_uniform(const Instance& instance, int per_item, Rng& rng) {
    CandidateSet set;
    const AABB& c = instance.container_box;
    for (std::size_t item = 0; item < instance.items.size(); ++item) {
        const ItemShape& shape = instance.items[item];
        const Coord x_lo = c.min.x - shape.box.min.x;
        const Coord x_hi = c.max.x - shape.box.max.x;
        const Coord y_lo = c.min.y - shape.box.min.y;
        const Coord y_hi = c.max.y - shape.box.max.y;
        if (x_lo > x_hi || y_lo > y_hi) continue; // cannot fit anywhere
        for (int t = 0; t < per_item; ++t) {
            const Point pos{rng.uniform(x_lo, x_hi), rng.uniform(y_lo, y_hi)};
            if (inside_container(shape.chains, pos, instance.container)) {
                set.candidates.push_back({static_cast<int>(item), pos, shape.value});
            }
        }
    }
    dedup_candidates(set);
    return set;
}

CandidateSet neighborhood_candidates(const Instance& instance, const Solution& solution,
                                     double sigma, int k, Rng& rng) {
    CandidateSet set;
    for (const Placement& p : solution.placements) {
        const ItemShape& shape = instance.items[p.item_index];
        for (int t = 0; t <= k; ++t) {
            Point pos = p.translation;
            if (t > 0) {
                pos.x += static_cast<Coord>(std::llround(rng.gaussian(0.0, sigma)));
                pos.y += static_cast<Coord>(std::llround(rng.gaussian(0.0, sigma)));
            }
            if (inside_container(shape.chains, pos, instance.container)) {
                set.candidates.push_back({p.item_index, pos, shape.value});
            }
        }
    }
    dedup_candidates(set);
    return set;
}

void dedup_candidates(CandidateSet& set) {
    auto key = [](const Candidate& c) { return std::tuple(c.item, c.translation.x, c.translation.y); };
    std::sort(set.candidates.begin(), set.candidates.end(),
              [&](const Candidate& a, const Candidate& b) { return key(a) < key(b); });
    set.candidates.erase(std::unique(set.candidates.begin(), set.candidates.end(),
                                     [&](const Candidate& a, const Candidate& b) {
                                         return key(a) == key(b);
                                     }),
                         set.candidates.end());
}

ConflictGraph build_conflict_graph(const CandidateSet& set, const Instance& instance) {
    ConflictGraph g;
    const int n = static_cast<int>(set.candidates.size());
    g.weights.reserve(n);
    g.vertex_item.reserve(n);
    g.cliques.assign(instance.items.size(), {});
    g.clique_caps.assign(instance.items.size(), 0);
    for (std::size_t item = 0; item < instance.items.size(); ++item) {
        g.clique_caps[item] = instance.items[item].quantity;
    }

    std::vector<AABB> boxes;
    boxes.reserve(n);
    AABB extent = instance.container_box;
    for (int v = 0; v < n; ++v) {
        const Candidate& c = set.candidates[v];
        g.weights.push_back(c.weight);
        g.vertex_item.push_back(c.item);
        g.cliques[c.item].push_back(v);
        const AABB b = instance.items[c.item].box.translated(c.translation);
        extent.min.x = std::min(extent.min.x, b.min.x);
        extent.min.y = std::min(extent.min.y, b.min.y);
        extent.max.x = std::max(extent.max.x, b.max.x);
        extent.max.y = std::max(extent.max.y, b.max.y);
        boxes.push_back(b);
    }

    Grid grid = Grid::for_boxes(extent, boxes);
    for (int v = 0; v < n; ++v) grid.insert(v, boxes[v]);
    std::vector<int> cands;
    for (int v = 0; v < n; ++v) {
        const Candidate& a = set.candidates[v];
        grid.query(boxes[v], cands);
        for (int w : cands) {
            if (w <= v) continue;
            const Candidate& b = set.candidates[w];
            if (items_overlap(instance.items[a.item].chains, a.translation,
                              instance.items[b.item].chains, b.translation)) {
                g.edges.push_back({v, w});
            }
        }
    }
    return g;
}

namespace {

class BranchAndBound {
public:
    BranchAndBound(const ConflictGraph& g, const SolverLimits& limits)
        : g_(g), limits_(limits), n_(g.size()) {
        order_.resize(n_);
        for (int i = 0; i < n_; ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return g_.weights[a] > g_.weights[b]; });
        adjacency_.assign(n_, {});
        for (const auto& [u, v] : g_.edges) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        blocked_.assign(n_, 0);
        chosen_.assign(n_, false);
        cap_left_ = g_.clique_caps;
        // suffix weight sums over the branching order, capacity-blind
        suffix_weight_.assign(n_ + 1, 0);
        for (int i = n_; i-- > 0;) {
            suffix_weight_[i] = suffix_weight_[i + 1] + g_.weights[order_[i]];
        }
        scratch_used_.assign(g_.cliques.size(), 0);
        deadline_active_ = limits_.max_seconds > 0.0;
        if (deadline_active_) {
            deadline_ = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(limits_.max_seconds));
        }
    }

    ExactSolution run() {
        dfs(0, 0);
        ExactSolution result;
        result.value = best_value_;
        result.proven_optimal = !aborted_;
        result.nodes = nodes_;
        result.selected = best_set_;
        std::sort(result.selected.begin(), result.selected.end());
        return result;
    }

private:
    bool out_of_budget() {
        if (limits_.max_nodes > 0 && nodes_ >= limits_.max_nodes) return true;
        if (deadline_active_ && (nodes_ & 1023) == 0 &&
            std::chrono::steady_clock::now() > deadline_) {
            return true;
        }
        return false;
    }

    // Upper bound: current value plus remaining eligible weights, capped per
    // clique by the remaining capacity (edges beyond the chosen set ignored).
    std::int64_t bound(int pos, std::int64_t current) {
        if (current + suffix_weight_[pos] <= best_value_) return current + suffix_weight_[pos];
        std::fill(scratch_used_.begin(), scratch_used_.end(), 0);
        std::int64_t total = current;
        for (int i = pos; i < n_; ++i) {
            const int v = order_[i];
            if (blocked_[v] > 0) continue;
            const int item = g_.vertex_item[v];
            if (scratch_used_[item] >= cap_left_[item]) continue;
            ++scratch_used_[item];
            total += g_.weights[v];
        }
        return total;
    }

    void dfs(int pos, std::int64_t current) {
        if (aborted_) return;
        ++nodes_;
        if (out_of_budget()) {
            aborted_ = true;
            return;
        }
        if (current > best_value_) {
            best_value_ = current;
            best_set_.clear();
            for (int v = 0; v < n_; ++v) {
                if (chosen_[v]) best_set_.push_back(v);
            }
        }
        if (pos >= n_) return;
        if (bound(pos, current) <= best_value_) return;

        const int v = order_[pos];
        const int item = g_.vertex_item[v];
        if (blocked_[v] == 0 && cap_left_[item] > 0) {
            chosen_[v] = true;
            --cap_left_[item];
            for (int u : adjacency_[v]) ++blocked_[u];
            dfs(pos + 1, current + g_.weights[v]);
            for (int u : adjacency_[v]) --blocked_[u];
            ++cap_left_[item];
            chosen_[v] = false;
        }
        dfs(pos + 1, current);
    }

    const ConflictGraph& g_;
    SolverLimits limits_;
    int n_;
    std::vector<int> order_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> blocked_;
    std::vector<bool> chosen_;
    std::vector<int> cap_left_;
    std::vector<std::int64_t> suffix_weight_;
    std::vector<int> scratch_used_;
    std::vector<int> best_set_;
    std::int64_t best_value_ = 0;
    std::int64_t nodes_ = 0;
    bool aborted_ = false;
    bool deadline_active_ = false;
    std::chrono::steady_clock::time_point deadline_;
};

} // namespace

ExactSolution solve_exact(const ConflictGraph& graph, const SolverLimits& limits) {
    return BranchAndBound(graph, limits).run();
}

void export_lp(const ConflictGraph& graph, std::ostream& out) {
    out << "Maximize\n obj:";
    int on_line = 0;
    for (int v = 0; v < graph.size(); ++v) {
        if (on_line == 8) {
            out << "\n     ";
            on_line = 0;
        }
        out << (v == 0 ? " " : " + ") << graph.weights[v] << " x_" << v;
        ++on_line;
    }
    out << "\nSubject To\n";
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        out << " e" << e << ": x_" << graph.edges[e].first << " + x_" << graph.edges[e].second
            << " <= 1\n";
    }
    for (std::size_t item = 0; item < graph.cliques.size(); ++item) {
        if (graph.cliques[item].empty()) continue;
        out << " q" << item << ":";
        on_line = 0;
        for (std::size_t i = 0; i < graph.cliques[item].size(); ++i) {
            if (on_line == 10) {
                out << "\n     ";
                on_line = 0;
            }
            out << (i == 0 ? " " : " + ") << "x_" << graph.cliques[item][i];
            ++on_line;
        }
        out << " <= " << graph.clique_caps[item] << "\n";
    }
    out << "Binary\n";
    for (int v = 0; v < graph.size(); ++v) out << " x_" << v << "\n";
    out << "End\n";
}

void export_lp_file(const ConflictGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    export_lp(graph, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<int> import_assignment(std::istream& in, int n_vertices) {
    std::vector<int> selected;
    std::vector<bool> seen(n_vertices, false);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) continue; // blank line
        double value = 0.0;
        std::string extra;
        if (name.rfind("x_", 0) != 0 || !(ls >> value) || (ls >> extra)) {
            throw std::runtime_error("assignment line " + std::to_string(line_no) +
                                     ": expected 'x_<id> <0-or-1>'");
        }
        int id = -1;
        try {
            std::size_t used = 0;
            id = std::stoi(name.substr(2), &used);
            if (used != name.size() - 2) id = -1;
        } catch (...) {
            id = -1;
        }
        if (id < 0 || id >= n_vertices) {
            throw std::runtime_error("assignment line " + std::to_string(line_no) +
                                     ": unknown variable '" + name + "'");
        }
        if (seen[id]) {
            throw std::runtime_error("assignment line " + std::to_string(line_no) +
                                     ": duplicate variable '" + name + "'");
        }
        seen[id] = true;
        const double rounded = std::round(value);
        if (std::abs(value - rounded) > 1e-6 || (rounded != 0.0 && rounded != 1.0)) {
            throw std::runtime_error("assignment line " + std::to_string(line_no) +
                                     ": value is not binary");
        }
        if (rounded == 1.0) selected.push_back(id);
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

std::vector<int> import_assignment_file(const std::string& path, int n_vertices) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return import_assignment(in, n_vertices);
}

Solution selection_to_solution(const CandidateSet& set, const std::vector<int>& selected,
                               const Instance& instance) {
    Solution sol;
    sol.instance_name = instance.name;
    sol.placements.reserve(selected.size());
    for (int v : selected) {
        const Candidate& c = set.candidates[v];
        sol.placements.push_back({c.item, c.translation});
    }
    return sol;
}

std::int64_t solution_value(const Instance& instance, const Solution& solution) {
    std::int64_t total = 0;
    for (const Placement& p : solution.placements) {
        total += instance.items[p.item_index].value;
    }
    return total;
}

Solution refine(const Instance& instance, const Solution& initial, const RefinementSchedule& sched,
                Rng& rng) {
    Solution current = initial;
    std::int64_t current_value = solution_value(instance, current);
    double sigma = sched.sigma0;
    if (sigma <= 0.0) {
        sigma = static_cast<double>(std::max(instance.container_box.width(),
                                             instance.container_box.height())) /
                10.0;
    }
    for (int round = 0; round < sched.rounds; ++round) {
        CandidateSet cands =
            neighborhood_candidates(instance, current, sigma, sched.neighbors_per_placement, rng);
        if (sched.uniform_extra_per_item > 0) {
            CandidateSet extra = sample_uniform(instance, sched.uniform_extra_per_item, rng);
            cands.candidates.insert(cands.candidates.end(), extra.candidates.begin(),
                                    extra.candidates.end());
            dedup_candidates(cands);
        }
        const ConflictGraph graph = build_conflict_graph(cands, instance);
        const ExactSolution res = solve_exact(graph, sched.limits);
        if (res.value >= current_value) {
            current = selection_to_solution(cands, res.selected, instance);
            current_value = res.value;
        }
        sigma *= sched.decay;
    }
    return current;
}

namespace {

// Exact rational point; denominators > 0.
struct RatPoint {
    Wide xn, xd, yn, yd;
};

Coord rat_floor(Wide num, Wide den) {
    return static_cast<Coord>(num >= 0 ? num / den : -((-num + den - 1) / den));
}

// Every vertex of (convex container) intersect (axis box) is an original
// container vertex inside the box, a container-edge/box-line crossing, or a
// box corner inside the container.
std::vector<RatPoint> cell_vertex_candidates(const Polygon& container, Coord x0, Coord x1,
                                             Coord y0, Coord y1) {
    std::vector<RatPoint> out;
    for (const Point& p : container) {
        if (x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1) {
            out.push_back({p.x, 1, p.y, 1});
        }
    }
    const std::size_t n = container.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = container[i];
        const Point b = container[(i + 1) % n];
        for (const Coord cx : {x0, x1}) {
            if ((a.x < cx && cx < b.x) || (b.x < cx && cx < a.x)) {
                Wide tn = Wide(cx) - a.x;
                Wide td = Wide(b.x) - a.x;
                if (td < 0) {
                    td = -td;
                    tn = -tn;
                }
                out.push_back({cx, 1, Wide(a.y) * td + tn * (b.y - a.y), td});
            }
        }
        for (const Coord cy : {y0, y1}) {
            if ((a.y < cy && cy < b.y) || (b.y < cy && cy < a.y)) {
                Wide tn = Wide(cy) - a.y;
                Wide td = Wide(b.y) - a.y;
                if (td < 0) {
                    td = -td;
                    tn = -tn;
                }
                out.push_back({Wide(a.x) * td + tn * (b.x - a.x), td, cy, 1});
            }
        }
    }
    for (const Coord cx : {x0, x1}) {
        for (const Coord cy : {y0, y1}) {
            if (locate_in_convex(container, {cx, cy}) != PointLocation::Outside) {
                out.push_back({cx, 1, cy, 1});
            }
        }
    }
    return out;
}

} // namespace

std::vector<Polygon> partition_cells(const Instance& instance, int cells_x, int cells_y) {
    const AABB& box = instance.container_box;
    auto cut_x = [&](int i) {
        return box.min.x + static_cast<Coord>(
                               std::llround(static_cast<double>(box.width()) * i / cells_x));
    };
    auto cut_y = [&](int j) {
        return box.min.y + static_cast<Coord>(
                               std::llround(static_cast<double>(box.height()) * j / cells_y));
    };

    std::vector<Polygon> cells;
    for (int j = 0; j < cells_y; ++j) {
        for (int i = 0; i < cells_x; ++i) {
            const Coord x0 = cut_x(i), x1 = cut_x(i + 1);
            const Coord y0 = cut_y(j), y1 = cut_y(j + 1);
            if (x0 >= x1 || y0 >= y1) continue;
            const std::vector<RatPoint> verts =
                cell_vertex_candidates(instance.container, x0, x1, y0, y1);
            if (verts.size() < 3) continue;

            // Round each vertex to the nearby integer points and keep those
            // inside both the cell and the container; the hull of the kept
            // points is then a subset of the intersection.
            std::vector<Point> keep;
            for (const RatPoint& p : verts) {
                const Coord fx = rat_floor(p.xn, p.xd);
                const Coord fy = rat_floor(p.yn, p.yd);
                for (Coord dx = 0; dx <= 1; ++dx) {
                    for (Coord dy = 0; dy <= 1; ++dy) {
                        const Point q{fx + dx, fy + dy};
                        if (q.x < x0 || q.x > x1 || q.y < y0 || q.y > y1) continue;
                        if (locate_in_convex(instance.container, q) == PointLocation::Outside) {
                            continue;
                        }
                        keep.push_back(q);
                    }
                }
            }
            try {
                cells.push_back(convex_hull(keep));
            } catch (const std::invalid_argument&) {
                // degenerate sliver; no usable cell here
            }
        }
    }
    return cells;
}

namespace {

// Longest-edge slope ordering key: finite slopes ascending, vertical last,
// ties broken by the diameter slope.
struct SlopeKey {
    bool vertical;
    Coord dy, dx; // dx > 0 when not vertical
    bool d_vertical;
    Coord ddy, ddx;
    int item;
};

SlopeKey slope_key(const ItemShape& shape, int item) {
    auto normalize = [](Vector v, bool& vertical, Coord& dy, Coord& dx) {
        if (v.x == 0) {
            vertical = true;
            dy = 1;
            dx = 0;
            return;
        }
        vertical = false;
        if (v.x < 0) v = -v;
        dy = v.y;
        dx = v.x;
    };
    SlopeKey key;
    normalize(shape.metrics.longest_edge_b - shape.metrics.longest_edge_a, key.vertical, key.dy,
              key.dx);
    normalize(shape.metrics.diameter_b - shape.metrics.diameter_a, key.d_vertical, key.ddy,
              key.ddx);
    key.item = item;
    return key;
}

bool slope_less(const SlopeKey& a, const SlopeKey& b) {
    if (a.vertical != b.vertical) return !a.vertical;
    if (!a.vertical) {
        const Wide lhs = Wide(a.dy) * b.dx;
        const Wide rhs = Wide(b.dy) * a.dx;
        if (lhs != rhs) return lhs < rhs;
    }
    if (a.d_vertical != b.d_vertical) return !a.d_vertical;
    if (!a.d_vertical) {
        const Wide lhs = Wide(a.ddy) * b.ddx;
        const Wide rhs = Wide(b.ddy) * a.ddx;
        if (lhs != rhs) return lhs < rhs;
    }
    return a.item < b.item;
}

} // namespace

Solution partition_and_solve(const Instance& instance, const PartitionConfig& cfg, Rng& rng) {
    const std::vector<Polygon> cells = partition_cells(instance, cfg.cells_x, cfg.cells_y);
    Solution merged;
    merged.instance_name = instance.name;
    if (cells.empty()) return merged;

    // Expand copies and sort them by slope so each cell gets similar items.
    std::vector<SlopeKey> copies;
    for (std::size_t item = 0; item < instance.items.size(); ++item) {
        for (int q = 0; q < instance.items[item].quantity; ++q) {
            copies.push_back(slope_key(instance.items[item], static_cast<int>(item)));
        }
    }
    std::sort(copies.begin(), copies.end(), slope_less);

    const std::size_t n_cells = cells.size();
    const std::size_t total = copies.size();
    std::size_t begin = 0;
    for (std::size_t c = 0; c < n_cells; ++c) {
        const std::size_t count = total / n_cells + (c < total % n_cells ? 1 : 0);
        const std::size_t end = begin + count;

        std::vector<int> block_counts(instance.items.size(), 0);
        for (std::size_t i = begin; i < end; ++i) ++block_counts[copies[i].item];
        begin = end;

        std::vector<RawItem> raw;
        std::vector<int> local_to_global;
        for (std::size_t item = 0; item < instance.items.size(); ++item) {
            if (block_counts[item] == 0) continue;
            raw.push_back({instance.items[item].poly, instance.items[item].value,
                           block_counts[item]});
            local_to_global.push_back(static_cast<int>(item));
        }
        if (raw.empty()) continue;

        Instance sub = Instance::create(instance.name + "/cell" + std::to_string(c), cells[c],
                                        std::move(raw));
        Rng cell_rng = rng.split();
        CandidateSet cands = sample_uniform(sub, cfg.samples_per_item, cell_rng);
        const ConflictGraph graph = build_conflict_graph(cands, sub);
        const ExactSolution res = solve_exact(graph, cfg.per_cell.limits);
        Solution cell_solution = selection_to_solution(cands, res.selected, sub);
        if (cfg.per_cell.rounds > 0) {
            cell_solution = refine(sub, cell_solution, cfg.per_cell, cell_rng);
        }
        for (const Placement& p : cell_solution.placements) {
            merged.placements.push_back({local_to_global[p.item_index], p.translation});
        }
    }
    return merged;
}

} // namespace polypack
