#pragma once

#include <vector>

#include "polypack/geometry.hpp"

namespace polypack {

// One x-monotone piece of an item boundary, stored left to right, plus the
// side the item interior lies on. Chains make the common overlap queries
// cheap: crossing chains mean overlapping items.
struct Chain {
    std::vector<Point> points; // consecutive x non-decreasing
    bool item_above = false;   // true: interior above the polyline (rightward boundary run)
    AABB box;
};

struct ChainSet {
    Polygon boundary; // original counterclockwise polygon
    std::vector<Chain> chains;
    AABB box;
};

// Splits the boundary at x-direction reversals. Vertical edges are attached
// to the run they continue. Convex polygons yield exactly two chains.
ChainSet decompose_chains(const Polygon& poly);

// True iff the open interiors of the two translated items intersect.
// Touching boundaries (shared vertices, shared or collinear edges) do not
// count as overlap.
bool items_overlap(const ChainSet& a, Point pos_a, const ChainSet& b, Point pos_b);

// True iff every translated vertex of the shape lies inside or on the convex
// container. The container must be strictly convex and counterclockwise.
bool inside_container(const ChainSet& shape, Point pos, const Polygon& container);

} // namespace polypack
