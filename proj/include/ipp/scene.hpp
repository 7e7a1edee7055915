#ifndef IPP_SCENE_HPP_
#define IPP_SCENE_HPP_

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ipp {

using Vec3 = Eigen::Vector3d;

struct CameraSpec {
    double resolution_px{0.0};     // pixels along one sensor dimension
    double smallest_feature{0.0};  // m
    double overlap{0.0};           // fraction in [0, 1)
    double focal_length{0.0};      // m
    double sensor_size{0.0};       // m
};

// Rectangle origin + [0,width]*u_axis + [0,height]*v_axis, seen from the side `normal` points to.
struct PlanarSurface {
    Vec3 origin{Vec3::Zero()};
    Vec3 u_axis{Vec3::UnitX()};
    Vec3 v_axis{Vec3::UnitY()};
    double width{0.0};
    double height{0.0};
    Vec3 normal{Vec3::UnitZ()};

    std::array<Vec3, 4> corners() const;
    Vec3 point_at(double u, double v) const { return origin + u * u_axis + v * v_axis; }
};

struct Obstacle {
    Vec3 min_corner{Vec3::Zero()};
    Vec3 max_corner{Vec3::Zero()};

    bool contains(const Vec3& p) const;
};

struct Scene {
    CameraSpec camera;
    std::vector<PlanarSurface> surfaces;
    std::vector<Obstacle> obstacles;
    Vec3 workspace_min{Vec3::Zero()};
    Vec3 workspace_max{Vec3::Zero()};
    double voxel_size{0.0};
    double vehicle_radius{0.0};
    std::array<double, 3> axis_weights{1.0, 1.0, 1.0};

    bool in_workspace(const Vec3& p, double tol = 1e-9) const;
};

// Lists every violated invariant as "<field>: <rule>". Empty iff the scene is valid.
std::vector<std::string> validate_scene(const Scene& scene);

// Parses the scene document without validating invariants. Throws ParseError.
Scene parse_scene(const std::string& text);

// Rescales surface direction vectors that are within 1e-6 of unit length.
void renormalize_axes(Scene& scene);

// parse_scene + unit-vector re-normalization + validation. Throws ParseError or ValidationError.
Scene scene_from_string(const std::string& text);
Scene load_scene(const std::filesystem::path& path);

std::string scene_to_string(const Scene& scene);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ipp

#endif  // IPP_SCENE_HPP_
