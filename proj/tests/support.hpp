// Fixtures shared by the unit and acceptance suites.
#ifndef IPP_TESTS_SUPPORT_HPP_
#define IPP_TESTS_SUPPORT_HPP_

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "ipp/scene.hpp"
#include "ipp/tour_graph.hpp"
#include "ipp/viewpoints.hpp"
#include "ipp/voxel_grid.hpp"

namespace ipp::test {

// Camera with a 1 m footprint and a 1 m standoff when overlap is 0.
inline CameraSpec unit_camera(double overlap = 0.0) {
    return {1000.0, 0.002, overlap, 0.008, 0.008};
}

// One wall facing -y with cols x rows unit cells, 1 m voxels, viewpoints at voxel centres.
inline Scene grid_scene(int rows, int cols) {
    Scene s;
    s.camera = unit_camera();
    PlanarSurface w;
    w.origin = Vec3(1.0, 0.5, 1.0);
    w.u_axis = Vec3::UnitX();
    w.v_axis = Vec3::UnitZ();
    w.normal = -Vec3::UnitY();
    w.width = cols;
    w.height = rows;
    s.surfaces.push_back(w);
    s.workspace_min = Vec3(0.0, -3.0, 0.0);
    s.workspace_max = Vec3(cols + 2.0, 2.0, rows + 2.0);
    s.voxel_size = 1.0;
    return s;
}

struct Pipeline {
    Scene scene;
    CoveragePlan plan;
    std::shared_ptr<const VoxelGrid> grid;
    TourGraph graph;
};

inline Pipeline build_pipeline(const Scene& scene, GraphOptions opts = {}) {
    Pipeline p;
    p.scene = scene;
    p.plan = generate_viewpoints(scene);
    p.grid = std::make_shared<const VoxelGrid>(build_grid(scene));
    p.graph = build_graph(p.plan, p.grid, scene.axis_weights, opts);
    return p;
}

// Symmetric Euclidean costs between uniform points in the unit square.
inline TourGraph random_euclidean_graph(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = u(rng);
        y[i] = u(rng);
    }
    std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(i) * n + j] = std::hypot(x[i] - x[j], y[i] - y[j]);
    return TourGraph::from_costs(n, std::move(c));
}

// Euclidean graph where the listed pairs are blocked.
inline TourGraph with_blocked_pairs(const TourGraph& g, const std::vector<std::pair<int, int>>& pairs) {
    const int n = g.size();
    std::vector<double> c(static_cast<std::size_t>(n) * n);
    std::vector<std::uint8_t> b(c.size(), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(i) * n + j] = g.cost(i, j);
    for (auto [i, j] : pairs) {
        b[static_cast<std::size_t>(i) * n + j] = 1;
        b[static_cast<std::size_t>(j) * n + i] = 1;
    }
    return TourGraph::from_costs(n, std::move(c), std::move(b));
}

// 1-3 randomly oriented surfaces in a workspace padded to contain every viewpoint.
inline Scene random_scene(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };

    Scene s;
    s.camera = {in(500, 4000), in(0.0005, 0.003), in(0.0, 0.6), in(0.01, 0.05), in(0.01, 0.04)};
    const double d = s.camera.resolution_px * s.camera.smallest_feature * 0.5 * s.camera.focal_length /
                     s.camera.sensor_size;
    const int count = 1 + static_cast<int>(rng() % 3);
    Vec3 lo = Vec3::Constant(1e9), hi = Vec3::Constant(-1e9);
    for (int k = 0; k < count; ++k) {
        Eigen::Quaterniond q(in(-1, 1), in(-1, 1), in(-1, 1), in(-1, 1));
        q.normalize();
        const Eigen::Matrix3d r = q.toRotationMatrix();
        PlanarSurface w;
        w.origin = Vec3(in(-10, 10), in(-10, 10), in(0, 10));
        w.u_axis = r.col(0);
        w.v_axis = r.col(1);
        w.normal = r.col(2);
        w.width = in(0.3, 8.0);
        w.height = in(0.3, 6.0);
        for (const auto& c : w.corners()) {
            lo = lo.cwiseMin(c);
            hi = hi.cwiseMax(c);
        }
        s.surfaces.push_back(w);
    }
    s.workspace_min = lo - Vec3::Constant(d + 1.0);
    s.workspace_max = hi + Vec3::Constant(d + 1.0);
    s.voxel_size = 0.5;
    return s;
}

// Independent check of a coverage plan. Returns an empty string when it holds, otherwise the first failure.
// Cell (r, c) spans [c p, min((c+1) p, width)] x [r p, min((r+1) p, height)] and must lie inside the
// p x p footprint of the one viewpoint indexed by it.
inline std::string coverage_failure(const Scene& scene, const CoveragePlan& plan, double dist_tol = 1e-9,
                                    double dir_tol = 1e-12) {
    const auto& cam = scene.camera;
    const double fov = 0.5 * cam.resolution_px * cam.smallest_feature;
    const double p = (1.0 - cam.overlap) * fov;
    const double d = fov * cam.focal_length / cam.sensor_size;
    if (std::abs(plan.working_distance - d) > 1e-12 * std::max(1.0, d)) return "working distance mismatch";

    std::size_t expected_total = 0;
    std::vector<int> seen(plan.viewpoints.size(), 0);
    for (std::size_t s = 0; s < scene.surfaces.size(); ++s) {
        const auto& w = scene.surfaces[s];
        const int rows = std::max(1, static_cast<int>(std::ceil(w.height / p - 1e-9)));
        const int cols = std::max(1, static_cast<int>(std::ceil(w.width / p - 1e-9)));
        expected_total += static_cast<std::size_t>(rows) * cols;
        int matched = 0;
        for (const auto& vp : plan.viewpoints) {
            if (vp.surface_index != static_cast<int>(s)) continue;
            if (vp.cell_row < 0 || vp.cell_row >= rows || vp.cell_col < 0 || vp.cell_col >= cols)
                return "viewpoint " + std::to_string(vp.id) + " indexes a cell outside the grid";
            ++matched;
            ++seen.at(vp.id);
            const Vec3 rel = vp.position - w.origin;
            if (std::abs(rel.dot(w.normal) - d) > dist_tol)
                return "viewpoint " + std::to_string(vp.id) + " standoff off by " +
                       std::to_string(rel.dot(w.normal) - d);
            if ((vp.orientation + w.normal).cwiseAbs().maxCoeff() > dir_tol)
                return "viewpoint " + std::to_string(vp.id) + " not anti-parallel to the normal";
            const double u = rel.dot(w.u_axis), v = rel.dot(w.v_axis);
            const double u0 = vp.cell_col * p, u1 = std::min((vp.cell_col + 1) * p, w.width);
            const double v0 = vp.cell_row * p, v1 = std::min((vp.cell_row + 1) * p, w.height);
            const double tol = 1e-9;
            if (u - p / 2 > u0 + tol || u + p / 2 < u1 - tol || v - p / 2 > v0 + tol || v + p / 2 < v1 - tol)
                return "viewpoint " + std::to_string(vp.id) + " footprint misses its cell";
            if (u < -tol || u > w.width + tol || v < -tol || v > w.height + tol)
                return "viewpoint " + std::to_string(vp.id) + " projects outside its surface";
        }
        if (matched != rows * cols) return "surface " + std::to_string(s) + " cell count mismatch";
    }
    if (plan.viewpoints.size() != expected_total) return "viewpoint count mismatch";
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (plan.viewpoints[i].id != static_cast<int>(i) || seen[i] != 1) return "viewpoint ids are not a bijection";
    }
    // Distinct (surface, row, col) triples.
    for (std::size_t i = 0; i < plan.viewpoints.size(); ++i) {
        const auto& a = plan.viewpoints[i];
        if (plan.id_of(a.surface_index, a.cell_row, a.cell_col) != a.id) return "id_of disagrees with viewpoint ids";
    }
    return {};
}

// Unit voxels with each cell occupied independently with probability `fill`.
inline VoxelGrid random_grid(std::array<int, 3> dims, double fill, std::mt19937_64& rng) {
    VoxelGrid g(dims, Vec3::Zero(), 1.0);
    std::bernoulli_distribution occ(fill);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (occ(rng)) g.set_occupied(g.voxel_at(i));
    return g;
}

inline Voxel random_free_voxel(const VoxelGrid& g, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    for (;;) {
        const Voxel v = g.voxel_at(pick(rng));
        if (!g.occupied(v)) return v;
    }
}

inline Tour tour_of(std::vector<int> seq) { return Tour{std::move(seq)}; }

}  // namespace ipp::test

#endif  // IPP_TESTS_SUPPORT_HPP_
