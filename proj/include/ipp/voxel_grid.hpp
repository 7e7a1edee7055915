#ifndef IPP_VOXEL_GRID_HPP_
#define IPP_VOXEL_GRID_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ipp/scene.hpp"

namespace ipp {

struct Voxel {
    int x{0};
    int y{0};
    int z{0};

    friend bool operator==(const Voxel&, const Voxel&) = default;
    friend auto operator<=>(const Voxel&, const Voxel&) = default;
};

using AxisWeights = std::array<double, 3>;

inline constexpr std::size_t kDefaultVoxelBudget = 100'000'000;

class VoxelGrid {
public:
    VoxelGrid() = default;
    // All voxels free.
    VoxelGrid(std::array<int, 3> dims, Vec3 origin, double voxel_size);

    const std::array<int, 3>& dims() const { return dims_; }
    const Vec3& origin() const { return origin_; }
    double voxel_size() const { return voxel_size_; }
    std::size_t size() const { return occupancy_.size(); }

    bool in_bounds(const Voxel& v) const {
        return v.x >= 0 && v.y >= 0 && v.z >= 0 && v.x < dims_[0] && v.y < dims_[1] && v.z < dims_[2];
    }
    std::size_t index(const Voxel& v) const {
        return (static_cast<std::size_t>(v.z) * dims_[1] + v.y) * dims_[0] + v.x;
    }
    Voxel voxel_at(std::size_t index) const;

    bool occupied(const Voxel& v) const { return occupancy_[index(v)] != 0; }
    void set_occupied(const Voxel& v, bool value = true) { occupancy_[index(v)] = value ? 1 : 0; }
    std::size_t occupied_count() const;

    Vec3 center(const Voxel& v) const;
    // Voxel whose center is nearest to p; nullopt if p is outside the grid box.
    std::optional<Voxel> locate(const Vec3& p) const;

    // Marks every voxel overlapping the box interior.
    void fill_box(const Vec3& min_corner, const Vec3& max_corner);
    // Marks every free voxel whose center lies within `radius` of an occupied voxel center.
    void inflate(double radius);

    // Text dump: header "nx ny nz", then one line of 0/1 per (z, y) row.
    std::string dump() const;

private:
    std::array<int, 3> dims_{0, 0, 0};
    Vec3 origin_{Vec3::Zero()};
    double voxel_size_{1.0};
    std::vector<std::uint8_t> occupancy_;
};

// Voxelizes the workspace, rasterizes obstacles and inflates them by the vehicle radius.
// Throws ResourceError when the voxel count exceeds `voxel_budget`.
VoxelGrid build_grid(const Scene& scene, std::size_t voxel_budget = kDefaultVoxelBudget);

// Cost of one move to a 26-neighbour offset: a1*alpha^2 + a2*beta^2 + a3*gamma^2.
double step_cost(int alpha, int beta, int gamma, const AxisWeights& weights);

enum class HeuristicMode {
    admissible,  // h = sum_i w_i |p_i - g_i|, optimal
    paper,       // h = |p - g|^2 in voxel units, not guaranteed optimal
};

struct VoxelPath {
    std::vector<Voxel> waypoints;
    double motion_cost{0.0};
};

struct SearchStats {
    std::size_t expansions{0};
};

// A* over the 26-connected free voxels. nullopt means Blocked.
// Throws InvalidArgument if an endpoint is out of bounds or occupied.
std::optional<VoxelPath> shortest_path(const VoxelGrid& grid, const Voxel& start, const Voxel& goal,
                                       const AxisWeights& weights, HeuristicMode mode = HeuristicMode::admissible,
                                       SearchStats* stats = nullptr);

}  // namespace ipp

#endif  // IPP_VOXEL_GRID_HPP_
