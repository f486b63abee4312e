#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polypack {

// All coordinates are 64-bit integers capped at |x| <= 2^40 on input, so
// every cross product and squared distance fits a 128-bit intermediate.
using Coord = std::int64_t;
using Wide = __int128;

inline constexpr Coord kCoordLimit = Coord{1} << 40;

struct Point {
    Coord x = 0;
    Coord y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;

    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    Point operator-() const { return {-x, -y}; }
};

using Vector = Point;

// Simple polygon, counterclockwise, first vertex not repeated.
using Polygon = std::vector<Point>;

inline Wide cross(Vector a, Vector b) {
    return Wide(a.x) * b.y - Wide(a.y) * b.x;
}

inline Wide dot(Vector a, Vector b) {
    return Wide(a.x) * b.x + Wide(a.y) * b.y;
}

inline Wide squared_length(Vector v) { return dot(v, v); }

inline Wide squared_distance(Point a, Point b) { return squared_length(b - a); }

// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right turn, 0 collinear.
inline int orient(Point a, Point b, Point c) {
    Wide d = cross(b - a, c - a);
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

// Rotations by +90 and -90 degrees.
inline Vector rot_ccw(Vector v) { return {-v.y, v.x}; }
inline Vector rot_cw(Vector v) { return {v.y, -v.x}; }

// Integer division rounded half away from zero.
Coord round_div_half_away(Wide num, Wide den);

struct AABB {
    Point min;
    Point max;

    Coord width() const { return max.x - min.x; }
    Coord height() const { return max.y - min.y; }

    AABB translated(Vector t) const { return {min + t, max + t}; }

    bool intersects(const AABB& o) const {
        return min.x <= o.max.x && o.min.x <= max.x && min.y <= o.max.y && o.min.y <= max.y;
    }
    // Open-interior intersection: boxes that merely touch do not count.
    bool open_intersects(const AABB& o) const {
        return min.x < o.max.x && o.min.x < max.x && min.y < o.max.y && o.min.y < max.y;
    }
    bool contains(Point p) const {
        return min.x <= p.x && p.x <= max.x && min.y <= p.y && p.y <= max.y;
    }
};

AABB bounding_box(const Polygon& poly);

// Twice the signed area (shoelace); positive for counterclockwise input.
Wide doubled_signed_area(const Polygon& poly);

bool is_ccw(const Polygon& poly);
bool is_convex_ccw(const Polygon& poly);
bool is_simple(const Polygon& poly);

// Throws std::invalid_argument describing the first violation found.
void validate_polygon(const Polygon& poly);
void validate_convex_container(const Polygon& poly);

// Vertex pair maximizing squared distance; ties broken lexicographically by
// (index of first vertex, index of second vertex).
std::pair<Point, Point> diameter(const Polygon& poly);

// Width of the polygon in the direction normal to its diameter, kept exact:
// width = num / sqrt(den) where den is the squared diameter length.
struct SquaredRational {
    Wide num = 0;
    Wide den = 0;
};
SquaredRational width_normal_to_diameter(const Polygon& poly);

// Edge with maximum squared length; ties broken by lowest starting vertex index.
std::pair<Point, Point> longest_edge(const Polygon& poly);

// Counterclockwise hull with collinear boundary points removed.
// Throws std::invalid_argument on fewer than 3 distinct points or collinear input.
Polygon convex_hull(std::vector<Point> points);

// Area-weighted centroid, coordinates rounded half away from zero.
Point centroid(const Polygon& poly);

struct ShapeMetrics {
    Wide doubled_area = 0;
    Point centroid;
    Point diameter_a;
    Point diameter_b;
    Wide diameter_sq = 0;   // squared diameter length
    Wide width_num = 0;     // width = width_num / sqrt(diameter_sq)
    Point longest_edge_a;
    Point longest_edge_b;
    bool is_skinny = false; // diameter/width > 3, decided by exact integer comparison

    double area() const { return static_cast<double>(doubled_area) / 2.0; }
    // t = diameter / width = diameter_sq / width_num.
    double elongation() const {
        return static_cast<double>(diameter_sq) / static_cast<double>(width_num);
    }
    // Thickness = width / diameter = width_num / diameter_sq (the inverse of t).
    double thickness() const {
        return static_cast<double>(width_num) / static_cast<double>(diameter_sq);
    }
};

ShapeMetrics compute_metrics(const Polygon& poly);

enum class PointLocation { Outside, OnBoundary, Inside };

// Exact location of p relative to a simple polygon (ray casting).
PointLocation locate_point(const Polygon& poly, Point p);

// Exact location of p relative to a convex counterclockwise polygon,
// O(log n) via fan binary search.
PointLocation locate_in_convex(const Polygon& convex_ccw, Point p);

// True iff p lies on the closed segment [a, b].
bool on_segment(Point a, Point b, Point p);

// Strictly transversal interior crossing of segments [p1,p2] and [q1,q2]
// (touching endpoints and collinear overlap do not count).
bool segments_cross_properly(Point p1, Point p2, Point q1, Point q2);

} // namespace polypack
