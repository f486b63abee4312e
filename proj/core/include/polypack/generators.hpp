#pragma once

#include <cstdint>
#include <string>

#include "polypack/packing.hpp"

namespace polypack {

enum class ValuesMode {
    Unit,   // every item worth 1
    Random, // small random integers
    Area,   // roughly proportional to the item area
};

ValuesMode values_mode_from_string(const std::string& s);

// k x k axis-aligned squares of side `cell` exactly tiling a square container.
// The optimal value is known by construction.
Instance gen_tiling(int k, Coord cell, ValuesMode values, std::uint64_t seed);

// Random convex items in a random convex container (jigsaw-like).
Instance gen_convex(int n_items, ValuesMode values, std::uint64_t seed);

// Random polyominoes of at most `max_cells` cells in a rectangular container
// (atris-like).
Instance gen_polyomino(int n_items, int max_cells, ValuesMode values, std::uint64_t seed);

} // namespace polypack
