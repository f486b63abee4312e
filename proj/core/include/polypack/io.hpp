#pragma once

#include <string>

#include "polypack/packing.hpp"

namespace polypack {

// Challenge-style JSON instance:
//   {"type": "cgshop2024_instance", "instance_name": ..., "container":
//    {"x": [...], "y": [...]}, "items": [{"x": [...], "y": [...],
//    "value": ..., "quantity": ...}, ...]}
// Unknown fields are ignored. Clockwise polygons are reoriented. Throws
// std::runtime_error with a descriptive message on malformed input.
Instance parse_instance_json(const std::string& text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

// Solution JSON: {"type": "cgshop2024_solution", "instance_name": ...,
//   "item_indices": [...], "x_translations": [...], "y_translations": [...]}
Solution parse_solution_json(const std::string& text);
Solution load_solution(const std::string& path);
std::string solution_to_json(const Solution& solution);
void save_solution(const Solution& solution, const std::string& path);

// Deterministic SVG depiction: container outline plus one filled path per
// placement, colored by item index hash.
std::string render_svg(const Instance& instance, const Solution& solution);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace polypack
