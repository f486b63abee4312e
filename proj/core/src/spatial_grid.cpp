#include "polypack/spatial_grid.hpp"

#include <algorithm>
#include <cassert>

namespace polypack {

Grid::Grid(const AABB& extent, Coord cell_size) : origin_(extent.min), cell_size_(cell_size) {
    assert(cell_size_ >= 1);
    // Coarsen tiny cells over huge extents: past ~4M cells the memory cost
    // outweighs any filtering gain.
    constexpr std::int64_t kMaxCells = std::int64_t{1} << 22;
    auto count = [&](Coord size) {
        const std::int64_t c = std::max<std::int64_t>(1, (extent.width() + size) / size);
        const std::int64_t r = std::max<std::int64_t>(1, (extent.height() + size) / size);
        return c * r;
    };
    while (count(cell_size_) > kMaxCells) cell_size_ *= 2;
    cols_ = static_cast<int>(std::max<Coord>(1, (extent.width() + cell_size_) / cell_size_));
    rows_ = static_cast<int>(std::max<Coord>(1, (extent.height() + cell_size_) / cell_size_));
    cells_.assign(static_cast<std::size_t>(cols_) * rows_, {});
}

Grid Grid::for_boxes(const AABB& extent, std::span<const AABB> item_boxes) {
    Coord size = 1;
    if (!item_boxes.empty()) {
        std::vector<Coord> dims;
        dims.reserve(item_boxes.size());
        for (const AABB& b : item_boxes) dims.push_back(std::max(b.width(), b.height()));
        const std::size_t mid = (dims.size() - 1) / 2;
        std::nth_element(dims.begin(), dims.begin() + mid, dims.end());
        size = std::max<Coord>(1, dims[mid]);
    }
    return Grid(extent, size);
}

Grid::Range Grid::covered(const AABB& box) const {
    auto cell_of = [this](Coord delta) { // floor division
        return delta >= 0 ? delta / cell_size_ : -((-delta + cell_size_ - 1) / cell_size_);
    };
    auto clamp = [](Coord v, int hi) {
        return static_cast<int>(std::max<Coord>(0, std::min<Coord>(v, hi - 1)));
    };
    Range r;
    r.c0 = clamp(cell_of(box.min.x - origin_.x), cols_);
    r.c1 = clamp(cell_of(box.max.x - origin_.x), cols_);
    r.r0 = clamp(cell_of(box.min.y - origin_.y), rows_);
    r.r1 = clamp(cell_of(box.max.y - origin_.y), rows_);
    return r;
}

void Grid::insert(int id, const AABB& box) {
    const Range r = covered(box);
    for (int row = r.r0; row <= r.r1; ++row) {
        for (int col = r.c0; col <= r.c1; ++col) {
            cells_[index(col, row)].push_back(id);
        }
    }
}

void Grid::remove(int id, const AABB& box) {
    const Range r = covered(box);
    for (int row = r.r0; row <= r.r1; ++row) {
        for (int col = r.c0; col <= r.c1; ++col) {
            auto& list = cells_[index(col, row)];
            auto it = std::find(list.begin(), list.end(), id);
            assert(it != list.end() && "removing an id that was never inserted");
            if (it != list.end()) {
                *it = list.back();
                list.pop_back();
            }
        }
    }
}

void Grid::query(const AABB& box, std::vector<int>& out) const {
    out.clear();
    const Range r = covered(box);
    for (int row = r.r0; row <= r.r1; ++row) {
        for (int col = r.c0; col <= r.c1; ++col) {
            const auto& list = cells_[index(col, row)];
            out.insert(out.end(), list.begin(), list.end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

bool Grid::empty() const {
    for (const auto& list : cells_) {
        if (!list.empty()) return false;
    }
    return true;
}

} // namespace polypack
