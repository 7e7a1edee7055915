#include "ipp/voxel_grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ipp/errors.hpp"

namespace ipp {

namespace {
constexpr double kBoxSlack = 1e-9;
}

VoxelGrid::VoxelGrid(std::array<int, 3> dims, Vec3 origin, double voxel_size)
    : dims_(dims), origin_(std::move(origin)), voxel_size_(voxel_size) {
    if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1) throw InvalidArgument("voxel grid dimensions must be >= 1");
    if (!(voxel_size > 0)) throw InvalidArgument("voxel size must be > 0");
    occupancy_.assign(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2], 0);
}

Voxel VoxelGrid::voxel_at(std::size_t index) const {
    const auto nx = static_cast<std::size_t>(dims_[0]);
    const auto ny = static_cast<std::size_t>(dims_[1]);
    return {static_cast<int>(index % nx), static_cast<int>((index / nx) % ny), static_cast<int>(index / (nx * ny))};
}

std::size_t VoxelGrid::occupied_count() const {
    return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), std::uint8_t{1}));
}

Vec3 VoxelGrid::center(const Voxel& v) const {
    return origin_ + voxel_size_ * Vec3(v.x + 0.5, v.y + 0.5, v.z + 0.5);
}

std::optional<Voxel> VoxelGrid::locate(const Vec3& p) const {
    std::array<int, 3> idx{};
    for (int a = 0; a < 3; ++a) {
        const double t = (p[a] - origin_[a]) / voxel_size_;
        if (t < -kBoxSlack || t > dims_[a] + kBoxSlack) return std::nullopt;
        idx[a] = std::clamp(static_cast<int>(std::floor(t)), 0, dims_[a] - 1);
    }
    return Voxel{idx[0], idx[1], idx[2]};
}

void VoxelGrid::fill_box(const Vec3& min_corner, const Vec3& max_corner) {
    std::array<int, 3> lo{}, hi{};
    for (int a = 0; a < 3; ++a) {
        lo[a] = std::max(0, static_cast<int>(std::floor((min_corner[a] - origin_[a]) / voxel_size_ + kBoxSlack)));
        hi[a] = std::min(dims_[a] - 1,
                         static_cast<int>(std::ceil((max_corner[a] - origin_[a]) / voxel_size_ - kBoxSlack)) - 1);
        if (hi[a] < lo[a]) return;
    }
    for (int z = lo[2]; z <= hi[2]; ++z)
        for (int y = lo[1]; y <= hi[1]; ++y)
            for (int x = lo[0]; x <= hi[0]; ++x) set_occupied({x, y, z});
}

void VoxelGrid::inflate(double radius) {
    if (!(radius > 0)) return;
    const double r_vox = radius / voxel_size_;
    const double r2 = r_vox * r_vox * (1.0 + 1e-12);
    const int reach = static_cast<int>(std::floor(r_vox * (1.0 + 1e-12)));
    if (reach < 1) return;

    std::vector<std::array<int, 3>> offsets;
    for (int dz = -reach; dz <= reach; ++dz)
        for (int dy = -reach; dy <= reach; ++dy)
            for (int dx = -reach; dx <= reach; ++dx)
                if ((dx || dy || dz) && dx * dx + dy * dy + dz * dz <= r2) offsets.push_back({dx, dy, dz});

    // The occupied voxel nearest to any free voxel always has a free 26-neighbour,
    // so dilating from the boundary of the occupied set is sufficient.
    std::vector<Voxel> sources;
    for (std::size_t i = 0; i < occupancy_.size(); ++i) {
        if (!occupancy_[i]) continue;
        const Voxel v = voxel_at(i);
        bool boundary = false;
        for (int dz = -1; dz <= 1 && !boundary; ++dz)
            for (int dy = -1; dy <= 1 && !boundary; ++dy)
                for (int dx = -1; dx <= 1 && !boundary; ++dx) {
                    const Voxel n{v.x + dx, v.y + dy, v.z + dz};
                    if (in_bounds(n) && !occupied(n)) boundary = true;
                }
        if (boundary) sources.push_back(v);
    }
    for (const auto& s : sources) {
        for (const auto& o : offsets) {
            const Voxel n{s.x + o[0], s.y + o[1], s.z + o[2]};
            if (in_bounds(n)) set_occupied(n);
        }
    }
}

std::string VoxelGrid::dump() const {
    std::ostringstream out;
    out << dims_[0] << ' ' << dims_[1] << ' ' << dims_[2] << '\n';
    for (int z = 0; z < dims_[2]; ++z)
        for (int y = 0; y < dims_[1]; ++y) {
            for (int x = 0; x < dims_[0]; ++x) out << (occupied({x, y, z}) ? '1' : '0');
            out << '\n';
        }
    return out.str();
}

VoxelGrid build_grid(const Scene& scene, std::size_t voxel_budget) {
    std::array<int, 3> dims{};
    double total = 1.0;
    for (int a = 0; a < 3; ++a) {
        const double extent = (scene.workspace_max[a] - scene.workspace_min[a]) / scene.voxel_size;
        const double n = std::max(1.0, std::ceil(extent - kBoxSlack * std::max(1.0, extent)));
        total *= n;
        if (total > static_cast<double>(voxel_budget)) {
            throw ResourceError("voxel grid exceeds the budget of " + std::to_string(voxel_budget) + " voxels");
        }
        dims[a] = static_cast<int>(n);
    }
    VoxelGrid grid(dims, scene.workspace_min, scene.voxel_size);
    for (const auto& o : scene.obstacles) grid.fill_box(o.min_corner, o.max_corner);
    grid.inflate(scene.vehicle_radius);
    return grid;
}

double step_cost(int alpha, int beta, int gamma, const AxisWeights& weights) {
    return weights[0] * alpha * alpha + weights[1] * beta * beta + weights[2] * gamma * gamma;
}

}  // namespace ipp
