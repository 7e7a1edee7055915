#ifndef IPP_TOUR_GRAPH_HPP_
#define IPP_TOUR_GRAPH_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipp/viewpoints.hpp"
#include "ipp/voxel_grid.hpp"

namespace ipp {

// Closed tour: sequence.size() == n + 1 and sequence.front() == sequence.back().
struct Tour {
    std::vector<int> sequence;

    int node_count() const { return sequence.empty() ? 0 : static_cast<int>(sequence.size()) - 1; }
    friend bool operator==(const Tour&, const Tour&) = default;
};

// Tour 0, 1, ..., n-1, 0.
Tour identity_tour(int n);

// Reason the tour is not a valid closed tour over nodes 0..n-1, or nullopt.
std::optional<std::string> tour_violation(const Tour& tour, int n);
// Throws InvalidArgument naming the violated invariant.
void validate_tour(const Tour& tour, int n);

struct GraphOptions {
    HeuristicMode heuristic{HeuristicMode::admissible};
    bool parallel{true};
    // Above this many nodes only costs are cached; leg waypoints are recomputed on demand.
    int eager_leg_limit{400};
};

class TourGraph {
public:
    TourGraph() = default;

    // Complete graph from a dense row-major matrix; entries with blocked[i*n+j] set become virtual
    // edges priced at virtual_cost_for(n, max finite cost). Throws InvalidArgument on a malformed matrix.
    static TourGraph from_costs(int n, std::vector<double> costs, std::vector<std::uint8_t> blocked = {});

    int size() const { return n_; }
    double cost(int i, int j) const { return cost_[static_cast<std::size_t>(i) * n_ + j]; }
    std::span<const double> row(int i) const { return {cost_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)}; }
    bool is_virtual(int i, int j) const { return virtual_[static_cast<std::size_t>(i) * n_ + j] != 0; }
    bool has_virtual_edges() const;
    double virtual_cost() const { return virtual_cost_; }
    double max_finite_cost() const { return max_finite_; }

    bool has_geometry() const { return grid_ != nullptr; }
    const VoxelGrid* grid() const { return grid_.get(); }
    // Voxel path from node i to node j; nullopt for virtual edges, i == j, or graphs without geometry.
    std::optional<VoxelPath> leg(int i, int j) const;

private:
    friend TourGraph build_graph(const CoveragePlan&, std::shared_ptr<const VoxelGrid>, const AxisWeights&,
                                 const GraphOptions&);

    int n_{0};
    std::vector<double> cost_;
    std::vector<std::uint8_t> virtual_;
    double virtual_cost_{0.0};
    double max_finite_{0.0};

    std::shared_ptr<const VoxelGrid> grid_;
    std::vector<Voxel> endpoints_;
    AxisWeights weights_{1.0, 1.0, 1.0};
    HeuristicMode heuristic_{HeuristicMode::admissible};
    std::vector<std::optional<VoxelPath>> legs_;  // upper triangle i < j, empty when lazy
};

// 10^3 * n * max finite cost (max finite cost taken as 1 when there is none).
double virtual_cost_for(int n, double max_finite_cost);

// All-pairs A* between viewpoint voxels. Throws InfeasibleError naming the viewpoint if one maps
// outside the grid or onto an occupied voxel.
TourGraph build_graph(const CoveragePlan& plan, std::shared_ptr<const VoxelGrid> grid, const AxisWeights& weights,
                      const GraphOptions& options = {});

// Sum of edge costs along the closed tour. Throws InvalidArgument for an invalid tour.
double tour_length(const TourGraph& graph, const Tour& tour);
// Same sum without validation, for hot loops over tours known to be valid.
double tour_length_unchecked(const TourGraph& graph, std::span<const int> sequence);
int virtual_edge_count(const TourGraph& graph, const Tour& tour);

// Plain-text cost matrix: first line n, then n rows of n numbers.
std::string graph_to_matrix_text(const TourGraph& graph);
TourGraph graph_from_matrix_text(const std::string& text);

// Shortest round-trip decimal representation.
std::string format_number(double value);

}  // namespace ipp

#endif  // IPP_TOUR_GRAPH_HPP_
