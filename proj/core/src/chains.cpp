#include "polypack/chains.hpp"

#include <algorithm>
#include <cassert>
#include <boost/multiprecision/cpp_int.hpp>

namespace polypack {

namespace {

int dx_sign(Point a, Point b) { return b.x > a.x ? 1 : (b.x < a.x ? -1 : 0); }

AABB box_of_points(const std::vector<Point>& pts) {
    AABB box{pts.front(), pts.front()};
    for (const Point& p : pts) {
        box.min.x = std::min(box.min.x, p.x);
        box.min.y = std::min(box.min.y, p.y);
        box.max.x = std::max(box.max.x, p.x);
        box.max.y = std::max(box.max.y, p.y);
    }
    return box;
}

} // namespace

ChainSet decompose_chains(const Polygon& poly) {
    const std::size_t n = poly.size();
    ChainSet set;
    set.boundary = poly;
    set.box = bounding_box(poly);

    // Start the walk where the x-direction flips, so no run wraps around.
    int last_sign = 0;
    for (std::size_t i = n; i-- > 0 && last_sign == 0;) {
        last_sign = dx_sign(poly[i], poly[(i + 1) % n]);
    }
    assert(last_sign != 0); // area > 0 implies some non-vertical edge
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int s = dx_sign(poly[i], poly[(i + 1) % n]);
        if (s != 0) {
            if (s != last_sign) {
                start = i;
                break;
            }
            last_sign = s;
        }
    }

    std::vector<Point> run{poly[start]};
    int run_dir = 0;
    auto flush = [&] {
        if (run.size() < 2) return;
        Chain chain;
        chain.points = run;
        if (run_dir < 0) std::reverse(chain.points.begin(), chain.points.end());
        chain.item_above = run_dir > 0;
        chain.box = box_of_points(chain.points);
        set.chains.push_back(std::move(chain));
    };

    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t i = (start + step) % n;
        const Point next = poly[(i + 1) % n];
        const int s = dx_sign(poly[i], next);
        if (s != 0 && run_dir != 0 && s != run_dir) {
            flush();
            run = {poly[i]};
            run_dir = s;
        } else if (s != 0 && run_dir == 0) {
            run_dir = s;
        }
        run.push_back(next);
    }
    flush();
    return set;
}

namespace {

// Proper crossings between two translated chains. Chains are x-sorted, so a
// forward merge visits only segment pairs with overlapping x-ranges.
bool chains_cross(const Chain& a, const Chain& b, Vector b_shift) {
    const std::size_t na = a.points.size() - 1;
    const std::size_t nb = b.points.size() - 1;
    std::size_t j0 = 0;
    for (std::size_t i = 0; i < na; ++i) {
        const Point a1 = a.points[i];
        const Point a2 = a.points[i + 1];
        while (j0 < nb && b.points[j0 + 1].x + b_shift.x < a1.x) ++j0;
        for (std::size_t j = j0; j < nb && b.points[j].x + b_shift.x <= a2.x; ++j) {
            if (segments_cross_properly(a1, a2, b.points[j] + b_shift, b.points[j + 1] + b_shift)) {
                return true;
            }
        }
    }
    return false;
}

using Big = boost::multiprecision::int256_t;

// y-coordinate of an edge at a fixed rational x, as an exact fraction.
struct EdgeY {
    Big num;
    Big den; // > 0
};

bool less(const EdgeY& p, const EdgeY& q) { return p.num * q.den < q.num * p.den; }

// Collects, at world x = mid4/4, the sorted crossing ordinates of the
// translated polygon boundary; consecutive pairs bound the interior slabs.
void slab_crossings(const Polygon& poly, Vector shift, Coord mid4, std::vector<EdgeY>& out) {
    out.clear();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = poly[i] + shift;
        const Point q = poly[(i + 1) % n] + shift;
        const Coord x1 = 4 * p.x;
        const Coord x2 = 4 * q.x;
        if (!(std::min(x1, x2) < mid4 && mid4 < std::max(x1, x2))) continue;
        const Coord dx = q.x - p.x;
        // y = p.y + (mid4/4 - p.x) * dy / dx
        Big num = Big(4) * p.y * dx + Big(mid4 - x1) * (q.y - p.y);
        Big den = Big(4) * dx;
        if (den < 0) {
            den = -den;
            num = -num;
        }
        out.push_back({std::move(num), std::move(den)});
    }
    std::sort(out.begin(), out.end(), [](const EdgeY& u, const EdgeY& v) { return less(u, v); });
    assert(out.size() % 2 == 0);
}

// Exact decision for the degenerate cases: do the open interiors meet in any
// vertical slab between consecutive vertex x-events?
bool slab_interiors_intersect(const Polygon& a, const Polygon& b, Vector b_shift) {
    std::vector<Coord> events;
    events.reserve(a.size() + b.size());
    Coord a_lo = a.front().x, a_hi = a.front().x;
    for (const Point& p : a) {
        events.push_back(2 * p.x);
        a_lo = std::min(a_lo, p.x);
        a_hi = std::max(a_hi, p.x);
    }
    Coord b_lo = b.front().x + b_shift.x, b_hi = b_lo;
    for (const Point& p : b) {
        const Coord x = p.x + b_shift.x;
        events.push_back(2 * x);
        b_lo = std::min(b_lo, x);
        b_hi = std::max(b_hi, x);
    }
    const Coord window_lo = 2 * std::max(a_lo, b_lo);
    const Coord window_hi = 2 * std::min(a_hi, b_hi);
    if (window_lo >= window_hi) return false;

    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    std::vector<EdgeY> ya, yb;
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        if (events[i] < window_lo || events[i + 1] > window_hi) continue;
        const Coord mid4 = events[i] + events[i + 1];
        slab_crossings(a, {0, 0}, mid4, ya);
        if (ya.empty()) continue;
        slab_crossings(b, b_shift, mid4, yb);
        if (yb.empty()) continue;
        std::size_t ia = 0, ib = 0;
        while (ia + 1 < ya.size() && ib + 1 < yb.size()) {
            const EdgeY& a_hi_y = ya[ia + 1];
            const EdgeY& b_hi_y = yb[ib + 1];
            if (less(ya[ia], b_hi_y) && less(yb[ib], a_hi_y)) return true;
            if (less(a_hi_y, b_hi_y)) {
                ia += 2;
            } else {
                ib += 2;
            }
        }
    }
    return false;
}

} // namespace

bool items_overlap(const ChainSet& a, Point pos_a, const ChainSet& b, Point pos_b) {
    const Vector shift = pos_b - pos_a; // work in a's frame
    if (!a.box.open_intersects(b.box.translated(shift))) return false;

    for (const Chain& ca : a.chains) {
        for (const Chain& cb : b.chains) {
            if (!ca.box.intersects(cb.box.translated(shift))) continue;
            if (chains_cross(ca, cb, shift)) return true;
        }
    }

    // No transversal boundary crossing. Interiors can still meet through a
    // strictly-contained vertex or a degenerate contact configuration.
    bool contact = false;
    const AABB b_box = b.box.translated(shift);
    for (const Point& v : a.boundary) {
        if (!b_box.contains(v)) continue;
        switch (locate_point(b.boundary, v - shift)) {
        case PointLocation::Inside: return true;
        case PointLocation::OnBoundary: contact = true; break;
        case PointLocation::Outside: break;
        }
    }
    for (const Point& v : b.boundary) {
        const Point w = v + shift;
        if (!a.box.contains(w)) continue;
        switch (locate_point(a.boundary, w)) {
        case PointLocation::Inside: return true;
        case PointLocation::OnBoundary: contact = true; break;
        case PointLocation::Outside: break;
        }
    }
    // Without any boundary contact there is nothing left that could overlap.
    if (!contact) return false;
    return slab_interiors_intersect(a.boundary, b.boundary, shift);
}

bool inside_container(const ChainSet& shape, Point pos, const Polygon& container) {
    for (const Point& v : shape.boundary) {
        if (locate_in_convex(container, v + pos) == PointLocation::Outside) return false;
    }
    return true;
}

} // namespace polypack
