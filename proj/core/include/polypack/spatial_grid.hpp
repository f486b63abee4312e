#pragma once

#include <span>
#include <vector>

#include "polypack/geometry.hpp"

namespace polypack {

// Uniform broad-phase grid over the container box. Each cell lists the
// placement ids whose translated AABB intersects it; queries return a
// conservative candidate set for the narrow-phase overlap test.
class Grid {
public:
    Grid() = default;
    Grid(const AABB& extent, Coord cell_size);

    // Cell size rule: max(1, median over items of max(box width, box height)).
    static Grid for_boxes(const AABB& extent, std::span<const AABB> item_boxes);

    void insert(int id, const AABB& box);
    void remove(int id, const AABB& box);

    // Deduplicated ids of placements whose box may intersect the query box.
    void query(const AABB& box, std::vector<int>& out) const;

    Coord cell_size() const { return cell_size_; }
    int cols() const { return cols_; }
    int rows() const { return rows_; }
    const std::vector<int>& cell(int col, int row) const { return cells_[index(col, row)]; }
    bool empty() const;

private:
    int index(int col, int row) const { return row * cols_ + col; }
    struct Range {
        int c0, c1, r0, r1;
    };
    Range covered(const AABB& box) const;

    Point origin_{0, 0};
    Coord cell_size_ = 1;
    int cols_ = 0;
    int rows_ = 0;
    std::vector<std::vector<int>> cells_;
};

} // namespace polypack
