#include "polypack/geometry.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace polypack {

Coord round_div_half_away(Wide num, Wide den) {
    if (den < 0) {
        den = -den;
        num = -num;
    }
    Wide q = num >= 0 ? (2 * num + den) / (2 * den) : -((-2 * num + den) / (2 * den));
    return static_cast<Coord>(q);
}

AABB bounding_box(const Polygon& poly) {
    AABB box{poly.front(), poly.front()};
    for (const Point& p : poly) {
        box.min.x = std::min(box.min.x, p.x);
        box.min.y = std::min(box.min.y, p.y);
        box.max.x = std::max(box.max.x, p.x);
        box.max.y = std::max(box.max.y, p.y);
    }
    return box;
}

Wide doubled_signed_area(const Polygon& poly) {
    // Shoelace relative to the first vertex keeps intermediates small.
    Wide sum = 0;
    const Point origin = poly.front();
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        sum += cross(poly[i] - origin, poly[i + 1] - origin);
    }
    return sum;
}

bool is_ccw(const Polygon& poly) { return doubled_signed_area(poly) > 0; }

bool is_convex_ccw(const Polygon& poly) {
    const std::size_t n = poly.size();
    if (n < 3 || !is_ccw(poly)) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) < 0) return false;
    }
    return true;
}

namespace {

// Closed segments share at least one point.
bool segments_touch(Point p1, Point p2, Point q1, Point q2) {
    if (segments_cross_properly(p1, p2, q1, q2)) return true;
    return on_segment(p1, p2, q1) || on_segment(p1, p2, q2) || on_segment(q1, q2, p1) ||
           on_segment(q1, q2, p2);
}

} // namespace

bool is_simple(const Polygon& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (poly[i] == poly[(i + 1) % n]) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point a1 = poly[i];
        const Point a2 = poly[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point b1 = poly[j];
            const Point b2 = poly[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // Neighbours may only meet at their shared vertex.
                const Point shared = (j == i + 1) ? a2 : a1;
                const Point tip_a = (j == i + 1) ? a1 : a2;
                const Point tip_b = (j == i + 1) ? b2 : b1;
                if (orient(tip_a, shared, tip_b) == 0 && dot(tip_a - shared, tip_b - shared) > 0) {
                    return false; // spike: boundary doubles back on itself
                }
            } else if (segments_touch(a1, a2, b1, b2)) {
                return false;
            }
        }
    }
    return true;
}

void validate_polygon(const Polygon& poly) {
    if (poly.size() < 3) throw std::invalid_argument("polygon has fewer than 3 vertices");
    for (const Point& p : poly) {
        if (std::abs(p.x) > kCoordLimit || std::abs(p.y) > kCoordLimit) {
            throw std::invalid_argument("polygon coordinate exceeds 2^40 limit");
        }
    }
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] == poly[(i + 1) % poly.size()]) {
            throw std::invalid_argument("polygon has equal consecutive vertices");
        }
    }
    if (doubled_signed_area(poly) <= 0) {
        throw std::invalid_argument("polygon is not counterclockwise");
    }
    if (!is_simple(poly)) throw std::invalid_argument("polygon is self-intersecting");
}

void validate_convex_container(const Polygon& poly) {
    validate_polygon(poly);
    if (!is_convex_ccw(poly)) throw std::invalid_argument("container is not convex");
}

std::pair<Point, Point> diameter(const Polygon& poly) {
    const std::size_t n = poly.size();
    Wide best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Wide d = squared_distance(poly[i], poly[j]);
            if (d > best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    }
    return {poly[bi], poly[bj]};
}

SquaredRational width_normal_to_diameter(const Polygon& poly) {
    auto [a, b] = diameter(poly);
    const Vector d = b - a;
    const Wide dd = squared_length(d);
    if (dd == 0) throw std::invalid_argument("degenerate polygon: zero diameter");
    const Vector normal = rot_ccw(d);
    Wide lo = 0, hi = 0;
    bool first = true;
    for (const Point& p : poly) {
        const Wide proj = dot(normal, p - a);
        if (first) {
            lo = hi = proj;
            first = false;
        } else {
            lo = std::min(lo, proj);
            hi = std::max(hi, proj);
        }
    }
    const Wide span = hi - lo;
    if (span == 0) throw std::invalid_argument("all polygon vertices are collinear");
    return {span, dd};
}

std::pair<Point, Point> longest_edge(const Polygon& poly) {
    const std::size_t n = poly.size();
    Wide best = -1;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Wide len = squared_distance(poly[i], poly[(i + 1) % n]);
        if (len > best) {
            best = len;
            bi = i;
        }
    }
    return {poly[bi], poly[(bi + 1) % n]};
}

Polygon convex_hull(std::vector<Point> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) throw std::invalid_argument("convex hull needs 3 distinct points");

    const std::size_t n = points.size();
    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower hull
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) { // upper hull
        while (k >= lower && orient(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw std::invalid_argument("convex hull of collinear points");
    return hull;
}

Point centroid(const Polygon& poly) {
    using Big = boost::multiprecision::int256_t;
    const Point origin = poly.front();
    Big sx = 0, sy = 0, area2 = 0;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        const Vector u = poly[i] - origin;
        const Vector v = poly[i + 1] - origin;
        const Big w = Big(cross(u, v));
        sx += w * (Big(u.x) + v.x);
        sy += w * (Big(u.y) + v.y);
        area2 += w;
    }
    if (area2 == 0) throw std::invalid_argument("zero-area polygon has no centroid");
    const Big den = 3 * area2;
    auto round_away = [](Big num, Big den) {
        if (den < 0) {
            den = -den;
            num = -num;
        }
        Big q = num >= 0 ? (2 * num + den) / (2 * den) : -((-2 * num + den) / (2 * den));
        return static_cast<Coord>(q);
    };
    return {origin.x + round_away(sx, den), origin.y + round_away(sy, den)};
}

ShapeMetrics compute_metrics(const Polygon& poly) {
    ShapeMetrics m;
    m.doubled_area = doubled_signed_area(poly);
    m.centroid = centroid(poly);
    std::tie(m.diameter_a, m.diameter_b) = diameter(poly);
    m.diameter_sq = squared_distance(m.diameter_a, m.diameter_b);
    m.width_num = width_normal_to_diameter(poly).num;
    std::tie(m.longest_edge_a, m.longest_edge_b) = longest_edge(poly);
    // skinny <=> diameter/width > 3 <=> diameter_sq > 3 * width_num, exactly.
    m.is_skinny = m.diameter_sq > 3 * m.width_num;
    return m;
}

bool on_segment(Point a, Point b, Point p) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_cross_properly(Point p1, Point p2, Point q1, Point q2) {
    const int d1 = orient(q1, q2, p1);
    const int d2 = orient(q1, q2, p2);
    const int d3 = orient(p1, p2, q1);
    const int d4 = orient(p1, p2, q2);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

PointLocation locate_point(const Polygon& poly, Point p) {
    const std::size_t n = poly.size();
    int crossings = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % n];
        if (on_segment(a, b, p)) return PointLocation::OnBoundary;
        if ((a.y <= p.y) != (b.y <= p.y)) {
            // Edge spans the horizontal line through p; count crossings right of p.
            const Wide det = cross(a - p, b - p);
            if (b.y > a.y ? det > 0 : det < 0) ++crossings;
        }
    }
    return crossings % 2 == 1 ? PointLocation::Inside : PointLocation::Outside;
}

PointLocation locate_in_convex(const Polygon& c, Point p) {
    const std::size_t n = c.size();
    if (n < 3) return PointLocation::Outside;
    if (p == c[0]) return PointLocation::OnBoundary;
    const int o_first = orient(c[0], c[1], p);
    if (o_first < 0) return PointLocation::Outside;
    if (o_first == 0) {
        return on_segment(c[0], c[1], p) ? PointLocation::OnBoundary : PointLocation::Outside;
    }
    const int o_last = orient(c[0], c[n - 1], p);
    if (o_last > 0) return PointLocation::Outside;
    if (o_last == 0) {
        return on_segment(c[0], c[n - 1], p) ? PointLocation::OnBoundary : PointLocation::Outside;
    }
    // Binary search for the fan wedge containing p.
    std::size_t lo = 1, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (orient(c[0], c[mid], p) >= 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const int side = orient(c[lo], c[hi], p);
    if (side < 0) return PointLocation::Outside;
    if (side == 0) {
        return on_segment(c[lo], c[hi], p) ? PointLocation::OnBoundary : PointLocation::Outside;
    }
    return PointLocation::Inside;
}

} // namespace polypack
