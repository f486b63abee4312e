#include "polypack/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace polypack {

namespace {

using nlohmann::json;

Polygon parse_xy_polygon(const json& j, const std::string& what) {
    if (!j.contains("x") || !j.contains("y")) {
        throw std::runtime_error(what + ": missing x/y coordinate arrays");
    }
    const auto& xs = j.at("x");
    const auto& ys = j.at("y");
    if (!xs.is_array() || !ys.is_array() || xs.size() != ys.size()) {
        throw std::runtime_error(what + ": x and y must be arrays of equal length");
    }
    Polygon poly;
    poly.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!xs[i].is_number_integer() || !ys[i].is_number_integer()) {
            throw std::runtime_error(what + ": coordinates must be integers");
        }
        poly.push_back({xs[i].get<Coord>(), ys[i].get<Coord>()});
    }
    return poly;
}

json polygon_to_xy(const Polygon& poly) {
    json xs = json::array();
    json ys = json::array();
    for (const Point& p : poly) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    return json{{"x", xs}, {"y", ys}};
}

} // namespace

Instance parse_instance_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("instance JSON parse error: ") + e.what());
    }
    if (j.value("type", "") != "cgshop2024_instance") {
        throw std::runtime_error("instance JSON: type must be \"cgshop2024_instance\"");
    }
    if (!j.contains("instance_name") || !j.at("instance_name").is_string()) {
        throw std::runtime_error("instance JSON: missing instance_name");
    }
    if (!j.contains("container") || !j.contains("items") || !j.at("items").is_array()) {
        throw std::runtime_error("instance JSON: missing container or items");
    }
    Polygon container = parse_xy_polygon(j.at("container"), "container");
    std::vector<RawItem> items;
    items.reserve(j.at("items").size());
    for (std::size_t i = 0; i < j.at("items").size(); ++i) {
        const json& ji = j.at("items")[i];
        const std::string what = "item " + std::to_string(i);
        RawItem item;
        item.poly = parse_xy_polygon(ji, what);
        if (!ji.contains("value") || !ji.at("value").is_number_integer()) {
            throw std::runtime_error(what + ": missing integer value");
        }
        item.value = ji.at("value").get<std::int64_t>();
        item.quantity = ji.value("quantity", 1);
        items.push_back(std::move(item));
    }
    try {
        return Instance::create(j.at("instance_name").get<std::string>(), std::move(container),
                                std::move(items));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("instance validation: ") + e.what());
    }
}

Instance load_instance(const std::string& path) { return parse_instance_json(read_file(path)); }

std::string instance_to_json(const Instance& instance) {
    json j;
    j["type"] = "cgshop2024_instance";
    j["instance_name"] = instance.name;
    j["container"] = polygon_to_xy(instance.container);
    json items = json::array();
    for (const ItemShape& item : instance.items) {
        json ji = polygon_to_xy(item.poly);
        ji["value"] = item.value;
        ji["quantity"] = item.quantity;
        items.push_back(std::move(ji));
    }
    j["items"] = std::move(items);
    return j.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::string& path) {
    write_file(path, instance_to_json(instance));
}

Solution parse_solution_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("solution JSON parse error: ") + e.what());
    }
    if (j.value("type", "") != "cgshop2024_solution") {
        throw std::runtime_error("solution JSON: type must be \"cgshop2024_solution\"");
    }
    Solution sol;
    sol.instance_name = j.value("instance_name", "");
    if (!j.contains("item_indices") || !j.contains("x_translations") ||
        !j.contains("y_translations")) {
        throw std::runtime_error("solution JSON: missing placement arrays");
    }
    const auto& idx = j.at("item_indices");
    const auto& xs = j.at("x_translations");
    const auto& ys = j.at("y_translations");
    if (!idx.is_array() || !xs.is_array() || !ys.is_array() || idx.size() != xs.size() ||
        idx.size() != ys.size()) {
        throw std::runtime_error(
            "solution JSON: item_indices/x_translations/y_translations length mismatch");
    }
    sol.placements.reserve(idx.size());
    try {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            sol.placements.push_back(
                {idx[i].get<int>(), {xs[i].get<Coord>(), ys[i].get<Coord>()}});
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("solution JSON: bad placement entry: ") + e.what());
    }
    return sol;
}

Solution load_solution(const std::string& path) { return parse_solution_json(read_file(path)); }

std::string solution_to_json(const Solution& solution) {
    json j;
    j["type"] = "cgshop2024_solution";
    j["instance_name"] = solution.instance_name;
    json idx = json::array(), xs = json::array(), ys = json::array();
    for (const Placement& p : solution.placements) {
        idx.push_back(p.item_index);
        xs.push_back(p.translation.x);
        ys.push_back(p.translation.y);
    }
    j["item_indices"] = std::move(idx);
    j["x_translations"] = std::move(xs);
    j["y_translations"] = std::move(ys);
    return j.dump(2) + "\n";
}

void save_solution(const Solution& solution, const std::string& path) {
    write_file(path, solution_to_json(solution));
}

namespace {

std::string color_for_item(int item_index) {
    // splitmix-style scramble for stable, spread-out colors
    std::uint64_t z = static_cast<std::uint64_t>(item_index) + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<unsigned>(z & 0x7f) + 0x40,
                  static_cast<unsigned>((z >> 8) & 0x7f) + 0x40,
                  static_cast<unsigned>((z >> 16) & 0x7f) + 0x40);
    return buf;
}

void append_path(std::ostream& out, const Polygon& poly, Vector t, Coord flip_sum) {
    out << "M";
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point p = poly[i] + t;
        out << (i == 0 ? "" : " L") << p.x << ' ' << flip_sum - p.y;
    }
    out << " Z";
}

} // namespace

std::string render_svg(const Instance& instance, const Solution& solution) {
    const AABB& box = instance.container_box;
    // SVG y grows downward; mirror within the box to draw y-up coordinates.
    const Coord flip = box.min.y + box.max.y;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << box.min.x << ' ' << box.min.y
        << ' ' << box.width() << ' ' << box.height() << "\">\n";
    out << "  <path d=\"";
    append_path(out, instance.container, {0, 0}, flip);
    out << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
        << std::max<Coord>(1, std::max(box.width(), box.height()) / 512) << "\"/>\n";
    for (const Placement& p : solution.placements) {
        out << "  <path d=\"";
        append_path(out, instance.items[p.item_index].poly, p.translation, flip);
        out << "\" fill=\"" << color_for_item(p.item_index)
            << "\" fill-opacity=\"0.85\" stroke=\"black\" stroke-width=\""
            << std::max<Coord>(1, std::max(box.width(), box.height()) / 1024) << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace polypack
