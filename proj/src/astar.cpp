#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

#include "ipp/errors.hpp"
#include "ipp/voxel_grid.hpp"

namespace ipp {

namespace {

struct OpenEntry {
    double f;
    double g;
    Voxel voxel;
};

// Orders the queue: lower f first, then lower accumulated cost, then lexicographic voxel.
struct LaterEntry {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g > b.g;
        return a.voxel > b.voxel;
    }
};

struct NodeRecord {
    double g;
    std::size_t parent;
};

double heuristic(const Voxel& p, const Voxel& goal, const AxisWeights& w, HeuristicMode mode) {
    const double dx = p.x - goal.x, dy = p.y - goal.y, dz = p.z - goal.z;
    if (mode == HeuristicMode::paper) return dx * dx + dy * dy + dz * dz;
    return w[0] * std::abs(dx) + w[1] * std::abs(dy) + w[2] * std::abs(dz);
}

void check_endpoint(const VoxelGrid& grid, const Voxel& v, const char* which) {
    const std::string where = std::string(which) + " voxel (" + std::to_string(v.x) + ", " + std::to_string(v.y) +
                              ", " + std::to_string(v.z) + ")";
    if (!grid.in_bounds(v)) throw InvalidArgument(where + " is outside the grid");
    if (grid.occupied(v)) throw InvalidArgument(where + " is occupied");
}

}  // namespace

std::optional<VoxelPath> shortest_path(const VoxelGrid& grid, const Voxel& start, const Voxel& goal,
                                       const AxisWeights& weights, HeuristicMode mode, SearchStats* stats) {
    check_endpoint(grid, start, "start");
    check_endpoint(grid, goal, "goal");

    constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();
    std::unordered_map<std::size_t, NodeRecord> nodes;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, LaterEntry> open;

    const std::size_t start_idx = grid.index(start);
    const std::size_t goal_idx = grid.index(goal);
    nodes[start_idx] = {0.0, kNoParent};
    open.push({heuristic(start, goal, weights, mode), 0.0, start});

    std::size_t expansions = 0;
    bool found = false;
    while (!open.empty()) {
        const OpenEntry top = open.top();
        open.pop();
        const std::size_t idx = grid.index(top.voxel);
        if (top.g > nodes[idx].g) continue;  // stale entry
        ++expansions;
        if (idx == goal_idx) {
            found = true;
            break;
        }
        for (int dz = -1; dz <= 1; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (!dx && !dy && !dz) continue;
                    const Voxel n{top.voxel.x + dx, top.voxel.y + dy, top.voxel.z + dz};
                    if (!grid.in_bounds(n) || grid.occupied(n)) continue;
                    const double g = top.g + step_cost(dx, dy, dz, weights);
                    const std::size_t n_idx = grid.index(n);
                    auto [it, inserted] = nodes.try_emplace(n_idx, NodeRecord{g, idx});
                    if (!inserted) {
                        if (g >= it->second.g) continue;
                        it->second = {g, idx};
                    }
                    open.push({g + heuristic(n, goal, weights, mode), g, n});
                }
    }
    if (stats) stats->expansions = expansions;
    if (!found) return std::nullopt;

    VoxelPath path;
    path.motion_cost = nodes[goal_idx].g;
    for (std::size_t idx = goal_idx; idx != kNoParent; idx = nodes[idx].parent) path.waypoints.push_back(grid.voxel_at(idx));
    std::reverse(path.waypoints.begin(), path.waypoints.end());
    return path;
}

}  // namespace ipp
