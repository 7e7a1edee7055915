#include "ipp/scene.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ipp/errors.hpp"

namespace ipp {

using nlohmann::json;

namespace {

constexpr double kUnitTol = 1e-9;
constexpr double kRenormTol = 1e-6;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing key '" + key + "'");
    return *it;
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

Vec3 as_vec3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw ParseError(where + ": expected an array of three numbers");
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = as_number(j[i], where);
    return v;
}

json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

void renormalize(Vec3& v) {
    const double n = v.norm();
    if (std::abs(n - 1.0) < kRenormTol && n > 0.0) v /= n;
}

Vec3 direction(const Vec3& v) {
    const double n = v.norm();
    return n > 0.0 ? Vec3(v / n) : v;
}

bool is_unit(const Vec3& v) { return std::abs(v.norm() - 1.0) < kUnitTol; }

bool componentwise_less(const Vec3& a, const Vec3& b) { return (a.array() < b.array()).all(); }

}  // namespace

std::array<Vec3, 4> PlanarSurface::corners() const {
    return {point_at(0, 0), point_at(width, 0), point_at(width, height), point_at(0, height)};
}

bool Obstacle::contains(const Vec3& p) const {
    return (p.array() > min_corner.array()).all() && (p.array() < max_corner.array()).all();
}

bool Scene::in_workspace(const Vec3& p, double tol) const {
    return (p.array() >= workspace_min.array() - tol).all() && (p.array() <= workspace_max.array() + tol).all();
}

std::vector<std::string> validate_scene(const Scene& scene) {
    std::vector<std::string> out;
    const auto& cam = scene.camera;
    if (!(cam.resolution_px > 0)) out.emplace_back("camera.resolution_px: must be > 0");
    if (!(cam.smallest_feature > 0)) out.emplace_back("camera.smallest_feature: must be > 0");
    if (!(cam.overlap >= 0)) out.emplace_back("camera.overlap: must be >= 0");
    if (!(cam.overlap < 1)) out.emplace_back("camera.overlap: overlap must be < 1");
    if (!(cam.focal_length > 0)) out.emplace_back("camera.focal_length: must be > 0");
    if (!(cam.sensor_size > 0)) out.emplace_back("camera.sensor_size: must be > 0");

    const bool workspace_ok = componentwise_less(scene.workspace_min, scene.workspace_max);
    if (!workspace_ok) out.emplace_back("workspace: min must be < max componentwise");
    if (!(scene.voxel_size > 0)) out.emplace_back("voxel_size: must be > 0");
    if (!(scene.vehicle_radius >= 0)) out.emplace_back("vehicle_radius: must be >= 0");

    bool any_positive = false;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!(scene.axis_weights[i] >= 0))
            out.emplace_back("axis_weights[" + std::to_string(i) + "]: must be >= 0");
        any_positive = any_positive || scene.axis_weights[i] > 0;
    }
    if (!any_positive) out.emplace_back("axis_weights: at least one weight must be > 0");

    for (std::size_t k = 0; k < scene.surfaces.size(); ++k) {
        const auto& s = scene.surfaces[k];
        const std::string p = "surfaces[" + std::to_string(k) + "]";
        if (!is_unit(s.u_axis)) out.push_back(p + ".u_axis: must be a unit vector");
        if (!is_unit(s.v_axis)) out.push_back(p + ".v_axis: must be a unit vector");
        if (!is_unit(s.normal)) out.push_back(p + ".normal: must be a unit vector");
        // Directions only, so a wrong length is reported once.
        const Vec3 u = direction(s.u_axis), v = direction(s.v_axis), n = direction(s.normal);
        if (std::abs(u.dot(v)) >= kUnitTol) out.push_back(p + ".v_axis: must be orthogonal to u_axis");
        if (std::abs(u.dot(n)) >= kUnitTol) out.push_back(p + ".normal: must be orthogonal to u_axis");
        if (std::abs(v.dot(n)) >= kUnitTol) out.push_back(p + ".normal: must be orthogonal to v_axis");
        if (!(s.width > 0)) out.push_back(p + ".width: must be > 0");
        if (!(s.height > 0)) out.push_back(p + ".height: must be > 0");
        if (workspace_ok) {
            for (const auto& c : s.corners()) {
                if (!scene.in_workspace(c)) {
                    out.push_back(p + ": surface must lie inside the workspace");
                    break;
                }
            }
        }
    }
    for (std::size_t k = 0; k < scene.obstacles.size(); ++k) {
        const auto& o = scene.obstacles[k];
        const std::string p = "obstacles[" + std::to_string(k) + "]";
        if (!componentwise_less(o.min_corner, o.max_corner)) {
            out.push_back(p + ": min must be < max componentwise");
        } else if (workspace_ok && !(scene.in_workspace(o.min_corner) && scene.in_workspace(o.max_corner))) {
            out.push_back(p + ": obstacle must lie inside the workspace");
        }
    }
    return out;
}

Scene parse_scene(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed scene document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("scene: top level must be an object");
    reject_unknown_keys(doc,
                        {"camera", "surfaces", "obstacles", "workspace", "voxel_size", "vehicle_radius",
                         "axis_weights"},
                        "scene");

    Scene scene;
    const json& cam = require(doc, "camera", "scene");
    if (!cam.is_object()) throw ParseError("camera: expected an object");
    reject_unknown_keys(cam, {"resolution_px", "smallest_feature", "overlap", "focal_length", "sensor_size"},
                        "camera");
    scene.camera.resolution_px = as_number(require(cam, "resolution_px", "camera"), "camera.resolution_px");
    scene.camera.smallest_feature =
        as_number(require(cam, "smallest_feature", "camera"), "camera.smallest_feature");
    scene.camera.overlap = as_number(require(cam, "overlap", "camera"), "camera.overlap");
    scene.camera.focal_length = as_number(require(cam, "focal_length", "camera"), "camera.focal_length");
    scene.camera.sensor_size = as_number(require(cam, "sensor_size", "camera"), "camera.sensor_size");

    const json& surfaces = require(doc, "surfaces", "scene");
    if (!surfaces.is_array()) throw ParseError("surfaces: expected an array");
    for (std::size_t k = 0; k < surfaces.size(); ++k) {
        const json& s = surfaces[k];
        const std::string p = "surfaces[" + std::to_string(k) + "]";
        if (!s.is_object()) throw ParseError(p + ": expected an object");
        reject_unknown_keys(s, {"origin", "u_axis", "v_axis", "width", "height", "normal"}, p);
        PlanarSurface surf;
        surf.origin = as_vec3(require(s, "origin", p), p + ".origin");
        surf.u_axis = as_vec3(require(s, "u_axis", p), p + ".u_axis");
        surf.v_axis = as_vec3(require(s, "v_axis", p), p + ".v_axis");
        surf.width = as_number(require(s, "width", p), p + ".width");
        surf.height = as_number(require(s, "height", p), p + ".height");
        surf.normal = as_vec3(require(s, "normal", p), p + ".normal");
        scene.surfaces.push_back(surf);
    }

    if (auto it = doc.find("obstacles"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("obstacles: expected an array");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const json& o = (*it)[k];
            const std::string p = "obstacles[" + std::to_string(k) + "]";
            if (!o.is_object()) throw ParseError(p + ": expected an object");
            reject_unknown_keys(o, {"min", "max"}, p);
            scene.obstacles.push_back(
                {as_vec3(require(o, "min", p), p + ".min"), as_vec3(require(o, "max", p), p + ".max")});
        }
    }

    const json& ws = require(doc, "workspace", "scene");
    if (!ws.is_object()) throw ParseError("workspace: expected an object");
    reject_unknown_keys(ws, {"min", "max"}, "workspace");
    scene.workspace_min = as_vec3(require(ws, "min", "workspace"), "workspace.min");
    scene.workspace_max = as_vec3(require(ws, "max", "workspace"), "workspace.max");

    scene.voxel_size = as_number(require(doc, "voxel_size", "scene"), "voxel_size");
    if (auto it = doc.find("vehicle_radius"); it != doc.end()) scene.vehicle_radius = as_number(*it, "vehicle_radius");
    if (auto it = doc.find("axis_weights"); it != doc.end()) {
        const Vec3 w = as_vec3(*it, "axis_weights");
        scene.axis_weights = {w.x(), w.y(), w.z()};
    }
    return scene;
}

void renormalize_axes(Scene& scene) {
    for (auto& s : scene.surfaces) {
        renormalize(s.u_axis);
        renormalize(s.v_axis);
        renormalize(s.normal);
    }
}

Scene scene_from_string(const std::string& text) {
    Scene scene = parse_scene(text);
    renormalize_axes(scene);
    if (auto violations = validate_scene(scene); !violations.empty()) throw ValidationError(violations.front());
    return scene;
}

Scene load_scene(const std::filesystem::path& path) { return scene_from_string(read_text_file(path)); }

std::string scene_to_string(const Scene& scene) {
    json doc;
    const auto& c = scene.camera;
    doc["camera"] = {{"resolution_px", c.resolution_px},
                     {"smallest_feature", c.smallest_feature},
                     {"overlap", c.overlap},
                     {"focal_length", c.focal_length},
                     {"sensor_size", c.sensor_size}};
    doc["surfaces"] = json::array();
    for (const auto& s : scene.surfaces) {
        doc["surfaces"].push_back({{"origin", vec3_json(s.origin)},
                                   {"u_axis", vec3_json(s.u_axis)},
                                   {"v_axis", vec3_json(s.v_axis)},
                                   {"width", s.width},
                                   {"height", s.height},
                                   {"normal", vec3_json(s.normal)}});
    }
    doc["obstacles"] = json::array();
    for (const auto& o : scene.obstacles)
        doc["obstacles"].push_back({{"min", vec3_json(o.min_corner)}, {"max", vec3_json(o.max_corner)}});
    doc["workspace"] = {{"min", vec3_json(scene.workspace_min)}, {"max", vec3_json(scene.workspace_max)}};
    doc["voxel_size"] = scene.voxel_size;
    doc["vehicle_radius"] = scene.vehicle_radius;
    doc["axis_weights"] = scene.axis_weights;
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace ipp
