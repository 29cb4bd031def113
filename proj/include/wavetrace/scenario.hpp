// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Scenario document loader. A scenario is one JSON object:
//
//   {
//     "frequency_hz": 3.5e9,
//     "room":     {"dims": [3.5, 3.0, 3.0]},
//     "window":   {"wall": "x0", "center": [1.5, 1.5],
//                  "width": 1.75, "height": 1.5, "material": "glass"},
//     "materials": [{"name": "concrete", "eps_r": 5.24,
//                    "sigma_a": 0.0462, "sigma_b": 0.7822, "thickness": 0.30}],
//     "nodes":    [{"role": "donor", "position_m": [0.05, 1.5, 1.5],
//                   "boresight": "window-outward-normal",
//                   "pattern": {"gain_dbi": 8.0, ...}, "tx_power_dbm": 20.0},
//                  {"role": "repeater", ...}],
//     "grid":     {"height_m": 1.5, "x_range": [0, 3.5],
//                  "y_range": [0, 3], "resolution_m": 0.05},
//     "noise":    {"bandwidth_hz": 1e8, "noise_figure_db": 9},
//     "tracer":   {"max_reflections": 2, "max_transmissions": 2}
//   }
//
// Everything except frequency_hz, room and nodes is optional and takes
// the documented defaults. Every failure names the offending JSON path.

#ifndef WAVETRACE_SCENARIO_HPP
#define WAVETRACE_SCENARIO_HPP

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "wavetrace/errors.hpp"
#include "wavetrace/geometry.hpp"
#include "wavetrace/link.hpp"
#include "wavetrace/tracer.hpp"

namespace wavetrace {

// Built-in material registry; scenario entries may override by name or
// add new materials. Parameter sets are standard published
// building-material defaults and also appear in shipped scenario files
// so that runs are data-driven.
inline std::map<std::string, Material> default_materials() {
    return {
        {"concrete", Material{"concrete", 5.24, 0.0462, 0.7822, 0.30}},
        {"glass", Material{"glass", 6.27, 0.0043, 1.1925, 0.006}},
    };
}

struct Scenario {
    double frequency_hz = 3.5e9;
    Vec3 room_dims;
    std::optional<WindowPlacement> window;
    std::string window_material = "glass";
    std::map<std::string, Material> materials = default_materials();
    AntennaNode donor;
    AntennaNode repeater;
    GridSpec grid;
    NoiseModel noise;
    TracerParams tracer;
    Scene scene; // built from the fields above
};

namespace detail {

using json = nlohmann::json;

inline const json& require_key(const json& obj, const std::string& prefix, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw MissingKey(prefix.empty() ? key : prefix + "." + key);
    }
    return *it;
}

inline double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) {
        throw BadValue(path, "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw BadValue(path, "not finite");
    }
    return d;
}

inline double number_or(const json& obj, const std::string& prefix, const char* key,
                        double fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        return fallback;
    }
    return as_number(*it, prefix.empty() ? key : prefix + "." + key);
}

inline int int_or(const json& obj, const std::string& prefix, const char* key, int fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        return fallback;
    }
    const std::string path = prefix.empty() ? key : prefix + "." + std::string(key);
    const double d = as_number(*it, path);
    if (std::floor(d) != d) {
        throw BadValue(path, "must be an integer");
    }
    return static_cast<int>(d);
}

inline std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) {
        throw BadValue(path, "expected a string");
    }
    return v.get<std::string>();
}

inline std::array<double, 2> as_pair(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) {
        throw BadValue(path, "expected an array of 2 numbers");
    }
    return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
}

inline Vec3 as_vec3(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) {
        throw BadValue(path, "expected an array of 3 numbers");
    }
    return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]"),
            as_number(v[2], path + "[2]")};
}

inline Material parse_material(const json& v, const std::string& path) {
    if (!v.is_object()) {
        throw BadValue(path, "expected an object");
    }
    Material m;
    m.name = as_string(require_key(v, path, "name"), path + ".name");
    m.eps_r = as_number(require_key(v, path, "eps_r"), path + ".eps_r");
    m.sigma_a = number_or(v, path, "sigma_a", 0.0);
    m.sigma_b = number_or(v, path, "sigma_b", 0.0);
    m.thickness_m = as_number(require_key(v, path, "thickness"), path + ".thickness");
    if (m.eps_r < 1.0) {
        throw BadValue(path + ".eps_r", "must be >= 1");
    }
    if (m.sigma_a < 0.0) {
        throw BadValue(path + ".sigma_a", "must be >= 0");
    }
    if (!(m.thickness_m > 0.0)) {
        throw BadValue(path + ".thickness", "must be positive");
    }
    return m;
}

inline AntennaPattern parse_pattern(const json& v, const std::string& path) {
    if (!v.is_object()) {
        throw BadValue(path, "expected an object");
    }
    AntennaPattern p;
    p.gain_dbi = number_or(v, path, "gain_dbi", p.gain_dbi);
    p.bw_az_deg = number_or(v, path, "bw_az_deg", p.bw_az_deg);
    p.bw_el_deg = number_or(v, path, "bw_el_deg", p.bw_el_deg);
    p.front_to_back_db = number_or(v, path, "front_to_back_db", p.front_to_back_db);
    p.sidelobe_floor_db = number_or(v, path, "sidelobe_floor_db", p.sidelobe_floor_db);
    if (!(p.bw_az_deg > 0.0) || p.bw_az_deg >= 360.0) {
        throw BadValue(path + ".bw_az_deg", "must be in (0, 360)");
    }
    if (!(p.bw_el_deg > 0.0) || p.bw_el_deg >= 360.0) {
        throw BadValue(path + ".bw_el_deg", "must be in (0, 360)");
    }
    if (!(p.front_to_back_db > 0.0)) {
        throw BadValue(path + ".front_to_back_db", "must be positive");
    }
    if (p.sidelobe_floor_db < p.front_to_back_db) {
        throw BadValue(path + ".sidelobe_floor_db", "must be >= front_to_back_db");
    }
    return p;
}

// The boresight field takes a unit vector or one of the symbolic names
// resolved against the built scene:
//   "window-outward-normal" -> the window facet's outward normal
//   "room-center"           -> from the node position toward the center
inline Vec3 resolve_boresight(const json& v, const std::string& path, const Vec3& position,
                              const Scene& scene) {
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        if (name == "window-outward-normal") {
            const int wi = find_window_index(scene);
            if (wi < 0) {
                throw BadValue(path, "scenario has no window to take the normal from");
            }
            return scene.surfaces[static_cast<std::size_t>(wi)].normal;
        }
        if (name == "room-center") {
            try {
                return normalized(scene.center() - position);
            } catch (const BadValue&) {
                throw BadValue(path, "node sits at the room center");
            }
        }
        throw BadValue(path, "unknown symbolic boresight '" + name + "'");
    }
    try {
        return normalized(as_vec3(v, path));
    } catch (const BadValue& e) {
        if (e.path() == "vector") {
            throw BadValue(path, "zero-length boresight");
        }
        throw;
    }
}

inline AntennaNode parse_node(const json& v, const std::string& path, const Scene& scene) {
    if (!v.is_object()) {
        throw BadValue(path, "expected an object");
    }
    AntennaNode node;
    const std::string role = as_string(require_key(v, path, "role"), path + ".role");
    if (role == "donor") {
        node.role = NodeRole::donor;
    } else if (role == "repeater") {
        node.role = NodeRole::repeater;
    } else {
        throw BadValue(path + ".role", "must be 'donor' or 'repeater'");
    }
    node.position = as_vec3(require_key(v, path, "position_m"), path + ".position_m");
    node.boresight =
        resolve_boresight(require_key(v, path, "boresight"), path + ".boresight", node.position,
                          scene);
    if (const auto it = v.find("pattern"); it != v.end()) {
        node.pattern = parse_pattern(*it, path + ".pattern");
    }
    node.tx_power_dbm = number_or(v, path, "tx_power_dbm", node.tx_power_dbm);
    return node;
}

}  // namespace detail

// Parses and fully validates one scenario document. Every invariant is
// checked here so downstream code can assume well-formed inputs.
inline Scenario parse_scenario(const std::string& text) {
    using detail::json;

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw BadValue("document", e.what());
    }
    if (!doc.is_object()) {
        throw BadValue("document", "expected a JSON object");
    }

    Scenario sc;
    sc.frequency_hz =
        detail::as_number(detail::require_key(doc, "", "frequency_hz"), "frequency_hz");
    if (!(sc.frequency_hz > 0.0)) {
        throw BadValue("frequency_hz", "must be positive");
    }

    const json& room = detail::require_key(doc, "", "room");
    if (!room.is_object()) {
        throw BadValue("room", "expected an object");
    }
    sc.room_dims = detail::as_vec3(detail::require_key(room, "room", "dims"), "room.dims");
    if (!(sc.room_dims.x > 0.0) || !(sc.room_dims.y > 0.0) || !(sc.room_dims.z > 0.0)) {
        throw BadValue("room.dims", "non-positive");
    }

    if (const auto it = doc.find("materials"); it != doc.end()) {
        if (!it->is_array()) {
            throw BadValue("materials", "expected an array");
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
            Material m =
                detail::parse_material((*it)[i], "materials[" + std::to_string(i) + "]");
            sc.materials[m.name] = std::move(m);
        }
    }

    if (const auto it = doc.find("window"); it != doc.end()) {
        const json& w = *it;
        if (!w.is_object()) {
            throw BadValue("window", "expected an object");
        }
        WindowPlacement placement;
        placement.wall = detail::as_string(detail::require_key(w, "window", "wall"),
                                           "window.wall");
        if (placement.wall != "x0" && placement.wall != "x1" && placement.wall != "y0" &&
            placement.wall != "y1") {
            throw BadValue("window.wall", "must be one of x0, x1, y0, y1");
        }
        const auto center =
            detail::as_pair(detail::require_key(w, "window", "center"), "window.center");
        placement.center_u = center[0];
        placement.center_v = center[1];
        placement.width = detail::as_number(detail::require_key(w, "window", "width"),
                                            "window.width");
        placement.height = detail::as_number(detail::require_key(w, "window", "height"),
                                             "window.height");
        if (!(placement.width > 0.0) || !(placement.height > 0.0)) {
            throw BadValue("window.width", "window extents must be positive");
        }
        if (const auto mit = w.find("material"); mit != w.end()) {
            sc.window_material = detail::as_string(*mit, "window.material");
        }
        sc.window = placement;
    }

    const auto concrete = sc.materials.find("concrete");
    if (concrete == sc.materials.end()) {
        throw UnknownMaterial("concrete");
    }
    Material window_mat;
    if (sc.window) {
        const auto wm = sc.materials.find(sc.window_material);
        if (wm == sc.materials.end()) {
            throw UnknownMaterial(sc.window_material);
        }
        window_mat = wm->second;
    }
    sc.scene = build_box_scene(sc.room_dims, sc.window, concrete->second, window_mat);

    const json& nodes = detail::require_key(doc, "", "nodes");
    if (!nodes.is_array()) {
        throw BadValue("nodes", "expected an array");
    }
    int donors = 0, repeaters = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        AntennaNode node =
            detail::parse_node(nodes[i], "nodes[" + std::to_string(i) + "]", sc.scene);
        if (node.role == NodeRole::donor) {
            sc.donor = node;
            ++donors;
        } else {
            sc.repeater = node;
            ++repeaters;
        }
    }
    if (donors != 1 || repeaters != 1) {
        throw BadValue("nodes", "exactly one donor and one repeater are required");
    }
    // The donor is the window-mounted unit: keep it near the window
    // plane (a small standoff is required so it is not a degenerate
    // tracer endpoint).
    if (sc.window) {
        const Surface& win = sc.scene.surfaces[static_cast<std::size_t>(
            find_window_index(sc.scene))];
        const double standoff = std::abs(plane_distance(sc.donor.position, win));
        if (standoff > 0.1) {
            throw BadValue("nodes", "donor must sit within 0.1 m of the window plane");
        }
    }

    sc.grid.height_m = 1.5;
    sc.grid.x_min = 0.0;
    sc.grid.x_max = sc.room_dims.x;
    sc.grid.y_min = 0.0;
    sc.grid.y_max = sc.room_dims.y;
    sc.grid.resolution_m = 0.05;
    if (const auto it = doc.find("grid"); it != doc.end()) {
        const json& g = *it;
        if (!g.is_object()) {
            throw BadValue("grid", "expected an object");
        }
        sc.grid.height_m = detail::number_or(g, "grid", "height_m", sc.grid.height_m);
        if (const auto rit = g.find("x_range"); rit != g.end()) {
            const auto r = detail::as_pair(*rit, "grid.x_range");
            sc.grid.x_min = r[0];
            sc.grid.x_max = r[1];
        }
        if (const auto rit = g.find("y_range"); rit != g.end()) {
            const auto r = detail::as_pair(*rit, "grid.y_range");
            sc.grid.y_min = r[0];
            sc.grid.y_max = r[1];
        }
        sc.grid.resolution_m = detail::number_or(g, "grid", "resolution_m", sc.grid.resolution_m);
    }
    if (!(sc.grid.resolution_m > 0.0)) {
        throw BadValue("grid.resolution_m", "must be positive");
    }
    if (sc.grid.x_min > sc.grid.x_max || sc.grid.x_min < 0.0 || sc.grid.x_max > sc.room_dims.x) {
        throw BadValue("grid.x_range", "must be an ascending range inside the room");
    }
    if (sc.grid.y_min > sc.grid.y_max || sc.grid.y_min < 0.0 || sc.grid.y_max > sc.room_dims.y) {
        throw BadValue("grid.y_range", "must be an ascending range inside the room");
    }
    if (sc.grid.height_m < 0.0 || sc.grid.height_m > sc.room_dims.z) {
        throw BadValue("grid.height_m", "must lie inside the room");
    }

    if (const auto it = doc.find("noise"); it != doc.end()) {
        const json& n = *it;
        if (!n.is_object()) {
            throw BadValue("noise", "expected an object");
        }
        sc.noise.bandwidth_hz = detail::number_or(n, "noise", "bandwidth_hz",
                                                  sc.noise.bandwidth_hz);
        sc.noise.noise_figure_db = detail::number_or(n, "noise", "noise_figure_db",
                                                     sc.noise.noise_figure_db);
    }
    if (!(sc.noise.bandwidth_hz > 0.0)) {
        throw BadValue("noise.bandwidth_hz", "must be positive");
    }
    if (sc.noise.noise_figure_db < 0.0) {
        throw BadValue("noise.noise_figure_db", "must be >= 0");
    }

    if (const auto it = doc.find("tracer"); it != doc.end()) {
        const json& t = *it;
        if (!t.is_object()) {
            throw BadValue("tracer", "expected an object");
        }
        sc.tracer.max_reflections =
            detail::int_or(t, "tracer", "max_reflections", sc.tracer.max_reflections);
        sc.tracer.max_transmissions =
            detail::int_or(t, "tracer", "max_transmissions", sc.tracer.max_transmissions);
    }
    if (sc.tracer.max_reflections < 0 || sc.tracer.max_reflections > 3) {
        throw BadValue("tracer.max_reflections", "must be in [0, 3]");
    }
    if (sc.tracer.max_transmissions < 0) {
        throw BadValue("tracer.max_transmissions", "must be >= 0");
    }

    return sc;
}

inline Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw BadValue(path, "cannot open scenario file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

// A case overlay may rename the case and move the nodes -- nothing
// else, so that compared cases share scene, grid, noise, and tracer
// settings. `base_text` is the base scenario document; the overlay's
// node array replaces the base's wholesale.
struct CaseOverlay {
    std::string name;
    Scenario scenario;
};

inline CaseOverlay apply_case_overlay(const std::string& base_text,
                                      const std::string& overlay_text,
                                      const std::string& fallback_name) {
    using detail::json;

    json base;
    json overlay;
    try {
        base = json::parse(base_text);
    } catch (const json::parse_error& e) {
        throw BadValue("document", e.what());
    }
    try {
        overlay = json::parse(overlay_text);
    } catch (const json::parse_error& e) {
        throw BadValue("overlay", e.what());
    }
    if (!overlay.is_object()) {
        throw BadValue("overlay", "expected a JSON object");
    }

    CaseOverlay out;
    out.name = fallback_name;
    for (const auto& [key, value] : overlay.items()) {
        if (key == "name") {
            out.name = detail::as_string(value, "overlay.name");
        } else if (key == "nodes") {
            base["nodes"] = value;
        } else {
            throw SpecMismatch("case overlay may only set 'name' and 'nodes', found '" + key +
                               "'");
        }
    }
    out.scenario = parse_scenario(base.dump());
    return out;
}

}  // namespace wavetrace

#endif  // WAVETRACE_SCENARIO_HPP
