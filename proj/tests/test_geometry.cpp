#include <doctest.h>

#include "oracles.hpp"
#include "polypack/geometry.hpp"
#include "polypack/rng.hpp"

using namespace polypack;

namespace {

Polygon unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

Polygon rect(Coord w, Coord h) { return {{0, 0}, {w, 0}, {w, h}, {0, h}}; }

} // namespace

TEST_CASE("doubled signed area on known shapes") {
    CHECK(doubled_signed_area(unit_square()) == 2);
    CHECK(doubled_signed_area(Polygon{{0, 0}, {2, 0}, {0, 2}}) == 4);
}

TEST_CASE("doubled signed area matches arbitrary-precision shoelace on random polygons") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Polygon poly = oracle::random_star_polygon(rng, 1000000, 24);
        const Wide got = doubled_signed_area(poly);
        const oracle::BigInt want = oracle::shoelace_big(poly);
        CHECK(want == oracle::BigInt(static_cast<long long>(got)));
    }
}

TEST_CASE("doubled signed area negates under reversal") {
    Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        Polygon poly = oracle::random_star_polygon(rng, 10000, 16);
        const Wide fwd = doubled_signed_area(poly);
        std::reverse(poly.begin(), poly.end());
        CHECK(doubled_signed_area(poly) == -fwd);
    }
}

TEST_CASE("orientation predicate agrees with arbitrary precision arithmetic") {
    Rng rng(13);
    const Coord limit = kCoordLimit;
    int nontrivial = 0;
    for (int trial = 0; trial < 1000000; ++trial) {
        Point a{rng.uniform(-limit, limit), rng.uniform(-limit, limit)};
        Point b{rng.uniform(-limit, limit), rng.uniform(-limit, limit)};
        Point c{rng.uniform(-limit, limit), rng.uniform(-limit, limit)};
        if (trial % 3 == 0) {
            // force near-collinear cases: c on the line a-b plus a tiny nudge
            c = {a.x + (b.x - a.x), a.y + (b.y - a.y) + rng.uniform(-1, 1)};
        }
        const int got = orient(a, b, c);
        const int want = oracle::orient_big(a, b, c);
        REQUIRE(got == want);
        nontrivial += got != 0;
    }
    CHECK(nontrivial > 100000);
}

TEST_CASE("diameter of simple shapes") {
    auto [a, b] = diameter(unit_square());
    CHECK(squared_distance(a, b) == 2);
    CHECK(a == Point{0, 0});
    CHECK(b == Point{1, 1});

    auto [c, d] = diameter(rect(10, 1));
    CHECK(squared_distance(c, d) == 101);
}

TEST_CASE("diameter matches all-pairs brute force on random convex polygons") {
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const Polygon poly = oracle::random_convex_polygon(rng, 100000, 16);
        auto [a, b] = diameter(poly);
        oracle::BigInt best = 0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            for (std::size_t j = i + 1; j < poly.size(); ++j) {
                const oracle::BigInt dx = poly[j].x - poly[i].x;
                const oracle::BigInt dy = poly[j].y - poly[i].y;
                const oracle::BigInt d2 = dx * dx + dy * dy;
                if (d2 > best) best = d2;
            }
        }
        CHECK(oracle::BigInt(static_cast<long long>(squared_distance(a, b))) == best);
    }
}

TEST_CASE("width normal to diameter: squares and bars") {
    // Unit square: diameter is the diagonal, the perpendicular extent equals
    // the other diagonal, so width^2 == diameter^2 (num == den).
    const SquaredRational w = width_normal_to_diameter(unit_square());
    CHECK(w.num == w.den);

    // 10x1 bar: skinny by the exact cross-multiplied test.
    const ShapeMetrics bar = compute_metrics(rect(10, 1));
    CHECK(bar.is_skinny);
    CHECK(bar.diameter_sq == 101);
    CHECK(bar.width_num == 20); // projections of (10,0)/(0,1) onto (-1,10) span 20

    const ShapeMetrics square = compute_metrics(rect(10, 10));
    CHECK_FALSE(square.is_skinny);
}

TEST_CASE("skinny flag matches a high-precision float oracle away from the threshold") {
    Rng rng(15);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Polygon poly = oracle::random_star_polygon(rng, 20000, 20);
        const ShapeMetrics m = compute_metrics(poly);
        const long double t =
            static_cast<long double>(m.diameter_sq) / static_cast<long double>(m.width_num);
        if (std::abs(static_cast<double>(t) - 3.0) < 1e-6) continue; // margin filter
        CHECK(m.is_skinny == (t > 3.0L));
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("width errors on collinear input") {
    CHECK_THROWS_AS(width_normal_to_diameter(Polygon{{0, 0}, {1, 0}, {2, 0}}),
                    std::invalid_argument);
}

TEST_CASE("convex hull drops interior and collinear points") {
    const Polygon hull = convex_hull({{0, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 5}, {5, 0}});
    CHECK(hull.size() == 4);
    CHECK(doubled_signed_area(hull) == 200);
}

TEST_CASE("convex hull of an already-convex polygon keeps its vertex set") {
    Rng rng(16);
    for (int trial = 0; trial < 50; ++trial) {
        const Polygon poly = oracle::random_convex_polygon(rng, 5000, 12);
        Polygon again = convex_hull(poly);
        CHECK(again.size() == poly.size());
        CHECK(doubled_signed_area(again) == doubled_signed_area(poly));
    }
}

TEST_CASE("convex hull is idempotent and matches gift wrapping") {
    Rng rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Point> pts;
        const int n = static_cast<int>(rng.uniform(3, 40));
        for (int i = 0; i < n; ++i) {
            pts.push_back({rng.uniform(-300, 300), rng.uniform(-300, 300)});
        }
        Polygon hull;
        try {
            hull = convex_hull(pts);
        } catch (const std::invalid_argument&) {
            CHECK(oracle::convex_hull_gift_wrap(pts).size() < 3);
            continue;
        }
        const Polygon wrapped = oracle::convex_hull_gift_wrap(pts);
        REQUIRE(hull.size() == wrapped.size());
        // same cyclic sequence (both counterclockwise)
        const auto start = std::find(wrapped.begin(), wrapped.end(), hull[0]);
        REQUIRE(start != wrapped.end());
        for (std::size_t i = 0; i < hull.size(); ++i) {
            CHECK(hull[i] == wrapped[(static_cast<std::size_t>(start - wrapped.begin()) + i) %
                                     wrapped.size()]);
        }
        const Polygon re = convex_hull(hull);
        CHECK(re == hull);
        // hull area dominates the area of a star polygonization of the points
        Point center{0, 0};
        for (const Point& p : pts) {
            center.x += p.x;
            center.y += p.y;
        }
        center.x /= static_cast<Coord>(pts.size());
        center.y /= static_cast<Coord>(pts.size());
        Polygon star = pts;
        std::sort(star.begin(), star.end(), [&](const Point& a, const Point& b) {
            const double aa = std::atan2(double(a.y - center.y), double(a.x - center.x));
            const double ab = std::atan2(double(b.y - center.y), double(b.x - center.x));
            return aa < ab;
        });
        try {
            validate_polygon(star);
            CHECK(doubled_signed_area(hull) >= doubled_signed_area(star));
        } catch (const std::invalid_argument&) {
            // ties in the angular sort can break simplicity; skip those draws
        }
    }
}

TEST_CASE("convex hull rejects degenerate input") {
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), std::invalid_argument);
}

TEST_CASE("longest edge on known shapes") {
    auto [a, b] = longest_edge(Polygon{{0, 0}, {3, 0}, {0, 4}});
    CHECK(a == Point{3, 0}); // hypotenuse of the 3-4-5 triangle
    CHECK(b == Point{0, 4});

    auto [c, d] = longest_edge(unit_square());
    CHECK(c == Point{0, 0}); // tie broken by the lowest starting index
    CHECK(d == Point{1, 0});
}

TEST_CASE("longest edge matches a linear scan") {
    Rng rng(18);
    for (int trial = 0; trial < 100; ++trial) {
        const Polygon poly = oracle::random_star_polygon(rng, 3000, 14);
        auto [a, b] = longest_edge(poly);
        Wide best = -1;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            best = std::max(best, squared_distance(poly[i], poly[(i + 1) % poly.size()]));
        }
        CHECK(squared_distance(a, b) == best);
    }
}

TEST_CASE("centroid rounding is half-away-from-zero") {
    // centroid of this triangle is (1/3, 1/3) -> rounds to (0, 0)
    CHECK(centroid(Polygon{{0, 0}, {1, 0}, {0, 1}}) == Point{0, 0});
    // (-1/3, -1/3) -> (0, 0)
    CHECK(centroid(Polygon{{0, 0}, {0, -1}, {-1, 0}}) == Point{0, 0});
    // square center (5, 5) stays exact
    CHECK(centroid(rect(10, 10)) == Point{5, 5});
    // rectangle with centroid (1.5, 0.5) -> away from zero -> (2, 1)
    CHECK(centroid(rect(3, 1)) == Point{2, 1});
}

TEST_CASE("polygon validation catches the defect classes") {
    CHECK_THROWS(validate_polygon(Polygon{{0, 0}, {1, 0}}));
    CHECK_THROWS(validate_polygon(Polygon{{0, 0}, {1, 0}, {1, 0}, {0, 1}}));
    CHECK_THROWS(validate_polygon(Polygon{{0, 0}, {0, 1}, {1, 0}})); // clockwise
    // bowtie self-intersection
    CHECK_THROWS(validate_polygon(Polygon{{0, 0}, {2, 2}, {2, 0}, {0, 2}}));
    CHECK_THROWS(validate_polygon(Polygon{{0, 0}, {kCoordLimit + 1, 0}, {0, 1}}));
    CHECK_NOTHROW(validate_polygon(unit_square()));
}

TEST_CASE("point location in convex polygons agrees with the general test") {
    Rng rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const Polygon poly = oracle::random_convex_polygon(rng, 500, 10);
        for (int probe = 0; probe < 50; ++probe) {
            Point p{rng.uniform(-600, 600), rng.uniform(-600, 600)};
            if (probe % 5 == 0) p = poly[rng.bounded(poly.size())]; // exact vertices
            const PointLocation fast = locate_in_convex(poly, p);
            const PointLocation slow = locate_point(poly, p);
            CHECK(fast == slow);
        }
    }
}
