#include "ipp/viewpoints.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "ipp/errors.hpp"

namespace ipp {

namespace {
// Relative slack so that e.g. 4.0 / 0.8 does not round up to an extra cell.
constexpr double kCellSlack = 1e-9;

std::string fmt_point(const Vec3& p) {
    return "(" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ", " + std::to_string(p.z()) + ")";
}
}  // namespace

double field_of_view(const CameraSpec& camera) { return 0.5 * camera.resolution_px * camera.smallest_feature; }

double primitive_size(double fov, double overlap) { return (1.0 - overlap) * fov; }

double working_distance(double fov, const CameraSpec& camera) {
    return fov * camera.focal_length / camera.sensor_size;
}

int cell_count(double length, double primitive) {
    const double ratio = length / primitive;
    return std::max(1, static_cast<int>(std::ceil(ratio - kCellSlack * std::max(1.0, ratio))));
}

double cell_center(int index, int count, double length, double primitive) {
    if (count == 1) return 0.5 * length;
    return std::min((index + 0.5) * primitive, length - 0.5 * primitive);
}

int CoveragePlan::id_of(int surface, int row, int col) const {
    int base = 0;
    for (int s = 0; s < surface; ++s) base += cells_per_surface[s].rows * cells_per_surface[s].cols;
    return base + row * cells_per_surface[surface].cols + col;
}

CoveragePlan generate_viewpoints(const Scene& scene) {
    CoveragePlan plan;
    plan.fov = field_of_view(scene.camera);
    plan.primitive = primitive_size(plan.fov, scene.camera.overlap);
    plan.working_distance = working_distance(plan.fov, scene.camera);

    for (int s = 0; s < static_cast<int>(scene.surfaces.size()); ++s) {
        const auto& surf = scene.surfaces[s];
        const SurfaceGrid grid{cell_count(surf.height, plan.primitive), cell_count(surf.width, plan.primitive)};
        plan.cells_per_surface.push_back(grid);
        for (int r = 0; r < grid.rows; ++r) {
            const double v = cell_center(r, grid.rows, surf.height, plan.primitive);
            for (int c = 0; c < grid.cols; ++c) {
                const double u = cell_center(c, grid.cols, surf.width, plan.primitive);
                Viewpoint vp;
                vp.id = static_cast<int>(plan.viewpoints.size());
                vp.position = surf.point_at(u, v) + plan.working_distance * surf.normal;
                vp.orientation = -surf.normal;
                vp.surface_index = s;
                vp.cell_row = r;
                vp.cell_col = c;

                if (!scene.in_workspace(vp.position)) {
                    throw InfeasibleError("viewpoint " + std::to_string(vp.id) + " of surface " + std::to_string(s) +
                                          " at " + fmt_point(vp.position) + " lies outside the workspace");
                }
                for (std::size_t k = 0; k < scene.obstacles.size(); ++k) {
                    if (scene.obstacles[k].contains(vp.position)) {
                        throw InfeasibleError("viewpoint " + std::to_string(vp.id) + " of surface " +
                                              std::to_string(s) + " lies inside obstacle " + std::to_string(k));
                    }
                }
                plan.viewpoints.push_back(vp);
            }
        }
    }
    return plan;
}

std::string coverage_plan_to_string(const CoveragePlan& plan) {
    using nlohmann::json;
    json doc;
    doc["fov"] = plan.fov;
    doc["primitive"] = plan.primitive;
    doc["working_distance"] = plan.working_distance;
    doc["cells_per_surface"] = json::array();
    for (const auto& g : plan.cells_per_surface) doc["cells_per_surface"].push_back({{"rows", g.rows}, {"cols", g.cols}});
    doc["viewpoints"] = json::array();
    for (const auto& vp : plan.viewpoints) {
        doc["viewpoints"].push_back({{"id", vp.id},
                                     {"position", {vp.position.x(), vp.position.y(), vp.position.z()}},
                                     {"orientation", {vp.orientation.x(), vp.orientation.y(), vp.orientation.z()}},
                                     {"surface_index", vp.surface_index},
                                     {"cell_row", vp.cell_row},
                                     {"cell_col", vp.cell_col}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace ipp
