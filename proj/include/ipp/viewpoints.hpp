#ifndef IPP_VIEWPOINTS_HPP_
#define IPP_VIEWPOINTS_HPP_

#include <string>
#include <vector>

#include "ipp/scene.hpp"

namespace ipp {

struct Viewpoint {
    int id{0};
    Vec3 position{Vec3::Zero()};
    Vec3 orientation{Vec3::Zero()};  // camera look direction, the negated surface normal
    int surface_index{0};
    int cell_row{0};
    int cell_col{0};
};

struct SurfaceGrid {
    int rows{0};  // along v_axis / height
    int cols{0};  // along u_axis / width
};

struct CoveragePlan {
    std::vector<Viewpoint> viewpoints;  // surface-major, then row-major
    double fov{0.0};
    double primitive{0.0};
    double working_distance{0.0};
    std::vector<SurfaceGrid> cells_per_surface;

    // id of the viewpoint covering (surface, row, col)
    int id_of(int surface, int row, int col) const;
};

// Footprint edge length covered at the required resolution: r_c * s_f / 2.
double field_of_view(const CameraSpec& camera);
// Cell edge length once the requested overlap is removed from the footprint.
double primitive_size(double fov, double overlap);
// Stand-off distance at which the camera footprint equals `fov`.
double working_distance(double fov, const CameraSpec& camera);

// Number of cells needed along an edge of `length`, at least one.
int cell_count(double length, double primitive);

// Cell-center coordinate along one edge. The last center is pulled inward when the edge is not
// an integer multiple of the primitive; a single cell sits at the middle of the edge.
double cell_center(int index, int count, double length, double primitive);

// Throws InfeasibleError if a viewpoint falls outside the workspace or inside an obstacle.
CoveragePlan generate_viewpoints(const Scene& scene);

std::string coverage_plan_to_string(const CoveragePlan& plan);

}  // namespace ipp

#endif  // IPP_VIEWPOINTS_HPP_
