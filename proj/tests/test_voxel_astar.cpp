#include <doctest.h>

#include <cstdlib>

#include "ipp/baselines.hpp"
#include "ipp/errors.hpp"
#include "ipp/voxel_grid.hpp"
#include "support.hpp"

using namespace ipp;

namespace {

Scene box_scene(double radius) {
    Scene s;
    s.camera = test::unit_camera();
    s.workspace_min = Vec3::Zero();
    s.workspace_max = Vec3::Constant(10.0);
    s.voxel_size = 1.0;
    s.vehicle_radius = radius;
    s.obstacles.push_back({Vec3(4, 4, 4), Vec3(5, 5, 5)});
    return s;
}

// Walks the path and re-derives its cost; fails on occupied cells or illegal moves.
double replay(const VoxelGrid& g, const VoxelPath& p, const AxisWeights& w) {
    double cost = 0.0;
    for (std::size_t k = 0; k < p.waypoints.size(); ++k) {
        const Voxel& v = p.waypoints[k];
        REQUIRE(g.in_bounds(v));
        REQUIRE_FALSE(g.occupied(v));
        if (k == 0) continue;
        const Voxel& u = p.waypoints[k - 1];
        const int a = v.x - u.x, b = v.y - u.y, c = v.z - u.z;
        REQUIRE(std::abs(a) <= 1);
        REQUIRE(std::abs(b) <= 1);
        REQUIRE(std::abs(c) <= 1);
        REQUIRE((a || b || c));
        cost += step_cost(a, b, c, w);
    }
    return cost;
}

}  // namespace

TEST_CASE("empty workspace is all free") {
    Scene s = box_scene(0.0);
    s.obstacles.clear();
    VoxelGrid g = build_grid(s);
    CHECK(g.size() == 1000);
    CHECK(g.occupied_count() == 0);
    CHECK(g.dims() == std::array<int, 3>{10, 10, 10});
}

TEST_CASE("unit obstacle without inflation occupies one voxel") {
    VoxelGrid g = build_grid(box_scene(0.0));
    CHECK(g.occupied_count() == 1);
    CHECK(g.occupied({4, 4, 4}));
}

TEST_CASE("inflation by one voxel adds the six face neighbours") {
    VoxelGrid g = build_grid(box_scene(1.0));
    CHECK(g.occupied_count() == 7);
    CHECK(g.occupied({3, 4, 4}));
    CHECK(g.occupied({4, 4, 5}));
    CHECK_FALSE(g.occupied({3, 3, 4}));
}

TEST_CASE("inflation matches the brute-force distance oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        VoxelGrid g = test::random_grid({9, 8, 7}, 0.04 + 0.02 * (trial % 4), rng);
        const double radius = 0.5 + 0.45 * trial;
        std::vector<Vec3> centers;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g.occupied(g.voxel_at(i))) centers.push_back(g.center(g.voxel_at(i)));
        VoxelGrid inflated = g;
        inflated.inflate(radius);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Vec3 c = g.center(g.voxel_at(i));
            bool near = false;
            for (const auto& o : centers) near = near || (c - o).norm() <= radius + 1e-9;
            INFO("trial " << trial << " voxel " << i);
            REQUIRE(inflated.occupied(g.voxel_at(i)) == near);
        }
    }
}

TEST_CASE("partial overlap marks the voxel") {
    Scene s = box_scene(0.0);
    s.obstacles = {{Vec3(4.5, 4.5, 4.5), Vec3(5.2, 5.2, 5.2)}};
    VoxelGrid g = build_grid(s);
    CHECK(g.occupied_count() == 8);
    // Touching a face without entering the voxel does not count.
    s.obstacles = {{Vec3(4, 4, 4), Vec3(5, 5, 5)}};
    CHECK(build_grid(s).occupied_count() == 1);
}

TEST_CASE("voxel budget") {
    Scene s = box_scene(0.0);
    CHECK_THROWS_AS(build_grid(s, 999), ResourceError);
    CHECK_NOTHROW(build_grid(s, 1000));
}

TEST_CASE("step costs") {
    CHECK(step_cost(1, 0, 0, {1, 1, 1}) == 1.0);
    CHECK(step_cost(1, 1, 1, {1, 2, 3}) == 6.0);
    CHECK(step_cost(0, -1, 0, {1, 2, 3}) == 2.0);
}

TEST_CASE("straight line") {
    VoxelGrid g({5, 5, 5}, Vec3::Zero(), 1.0);
    auto p = shortest_path(g, {0, 0, 0}, {2, 0, 0}, {1, 1, 1});
    REQUIRE(p);
    CHECK(p->motion_cost == 2.0);
    CHECK(p->waypoints.size() == 3);
    CHECK(p->waypoints.front() == Voxel{0, 0, 0});
    CHECK(p->waypoints.back() == Voxel{2, 0, 0});
}

TEST_CASE("diagonal neighbour costs three") {
    VoxelGrid g({3, 3, 3}, Vec3::Zero(), 1.0);
    auto p = shortest_path(g, {0, 0, 0}, {1, 1, 1}, {1, 1, 1});
    REQUIRE(p);
    CHECK(p->motion_cost == 3.0);
    CHECK(dijkstra_oracle(g, {0, 0, 0}, {1, 1, 1}, {1, 1, 1}) == 3.0);
}

TEST_CASE("enclosed goal is blocked") {
    VoxelGrid g({5, 5, 5}, Vec3::Zero(), 1.0);
    for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx)
                if (dx || dy || dz) g.set_occupied({2 + dx, 2 + dy, 2 + dz});
    CHECK_FALSE(shortest_path(g, {0, 0, 0}, {2, 2, 2}, {1, 1, 1}).has_value());
    CHECK_FALSE(dijkstra_oracle(g, {0, 0, 0}, {2, 2, 2}, {1, 1, 1}).has_value());
}

TEST_CASE("start equals goal") {
    VoxelGrid g({3, 3, 3}, Vec3::Zero(), 1.0);
    auto p = shortest_path(g, {1, 1, 1}, {1, 1, 1}, {1, 1, 1});
    REQUIRE(p);
    CHECK(p->motion_cost == 0.0);
    CHECK(p->waypoints.size() == 1);
}

TEST_CASE("bad endpoints are rejected") {
    VoxelGrid g({3, 3, 3}, Vec3::Zero(), 1.0);
    g.set_occupied({2, 2, 2});
    CHECK_THROWS_AS(shortest_path(g, {0, 0, 0}, {2, 2, 2}, {1, 1, 1}), InvalidArgument);
    CHECK_THROWS_AS(shortest_path(g, {0, 0, 0}, {3, 0, 0}, {1, 1, 1}), InvalidArgument);
}

TEST_CASE("admissible A* agrees with Dijkstra on random grids") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> wpick(1, 3);
    for (int trial = 0; trial < 30; ++trial) {
        VoxelGrid g = test::random_grid({12, 10, 6}, 0.25, rng);
        const AxisWeights w{double(wpick(rng)), double(wpick(rng)), double(wpick(rng))};
        const Voxel a = test::random_free_voxel(g, rng), b = test::random_free_voxel(g, rng);
        auto astar = shortest_path(g, a, b, w);
        auto oracle = dijkstra_oracle(g, a, b, w);
        INFO("trial " << trial);
        REQUIRE(astar.has_value() == oracle.has_value());
        if (!astar) continue;
        CHECK(astar->motion_cost == *oracle);
        CHECK(replay(g, *astar, w) == astar->motion_cost);
        CHECK(astar->waypoints.front() == a);
        CHECK(astar->waypoints.back() == b);
    }
}

TEST_CASE("paper heuristic returns a valid path no cheaper than optimal") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        VoxelGrid g = test::random_grid({10, 10, 5}, 0.2, rng);
        const AxisWeights w{1, 2, 3};
        const Voxel a = test::random_free_voxel(g, rng), b = test::random_free_voxel(g, rng);
        auto fast = shortest_path(g, a, b, w, HeuristicMode::paper);
        auto oracle = dijkstra_oracle(g, a, b, w);
        REQUIRE(fast.has_value() == oracle.has_value());
        if (!fast) continue;
        CHECK(fast->motion_cost >= *oracle);
        CHECK(replay(g, *fast, w) == fast->motion_cost);
    }
}

TEST_CASE("repeated searches return the same waypoints") {
    std::mt19937_64 rng(3);
    VoxelGrid g = test::random_grid({10, 10, 10}, 0.2, rng);
    const Voxel a = test::random_free_voxel(g, rng), b = test::random_free_voxel(g, rng);
    auto p1 = shortest_path(g, a, b, {1, 1, 1});
    auto p2 = shortest_path(g, a, b, {1, 1, 1});
    REQUIRE(p1.has_value() == p2.has_value());
    if (p1) CHECK(p1->waypoints == p2->waypoints);
}

TEST_CASE("locate and center are consistent") {
    VoxelGrid g({4, 3, 2}, Vec3(-1, -1, -1), 0.5);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Voxel v = g.voxel_at(i);
        CHECK(g.index(v) == i);
        CHECK(g.locate(g.center(v)) == v);
    }
    CHECK_FALSE(g.locate(Vec3(5, 0, 0)).has_value());
    CHECK(g.locate(Vec3(1, 0.5, 0)) == Voxel{3, 2, 1});
}
