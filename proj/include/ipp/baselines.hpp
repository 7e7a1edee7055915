#ifndef IPP_BASELINES_HPP_
#define IPP_BASELINES_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ipp/dpso.hpp"
#include "ipp/tour_graph.hpp"
#include "ipp/voxel_grid.hpp"

namespace ipp {

inline constexpr int kBruteForceLimit = 12;
inline constexpr int kExactDpLimit = 16;

// Enumerates the (n-1)!/2 distinct cyclic tours. Throws InvalidArgument above kBruteForceLimit nodes.
Tour brute_force_tsp(const TourGraph& graph);

// Held-Karp dynamic program. With finite_edges_only, virtual edges are forbidden and nullopt means
// no Hamiltonian cycle over real edges exists. Throws InvalidArgument above kExactDpLimit nodes.
std::optional<Tour> exact_tsp(const TourGraph& graph, bool finite_edges_only = false);

// solve() with seeding, mutation and edge exchange all switched off.
SolveReport plain_dpso(const TourGraph& graph, SwarmConfig cfg);

struct HeuristicResult {
    Tour tour;
    double cost{0.0};
    int improving_moves{0};
};

// Nearest-neighbour construction from node 0, then best-improvement 2-opt to a local optimum.
HeuristicResult nearest_neighbor_two_opt(const TourGraph& graph);

// Uniform-cost search over the same 26-connected step costs as shortest_path. nullopt means Blocked.
std::optional<double> dijkstra_oracle(const VoxelGrid& grid, const Voxel& start, const Voxel& goal,
                                      const AxisWeights& weights);

enum class Algorithm {
    enhanced,
    no_init_seed,
    no_mutation,
    no_edge_exchange,
    serial,
    plain,
    nn_two_opt,
};

const std::vector<Algorithm>& all_algorithms();
std::string algorithm_name(Algorithm a);

struct BenchInstance {
    std::string id;
    TourGraph graph;
    std::optional<CoveragePlan> plan;
};

struct BenchResult {
    std::string algorithm;
    std::string instance;
    std::uint64_t seed{0};
    double best_cost{0.0};
    double wall_time{0.0};
    long long iterations{0};  // generations, or improving moves for the heuristic
};

struct BenchSummary {
    std::string algorithm;
    std::string instance;
    int trials{0};
    double mean_cost{0.0};
    double sd_cost{0.0};
    double mean_time{0.0};
    double sd_time{0.0};
    // Mean over paired seeds of 100 * (plain - this) / plain; nullopt when plain was not run.
    std::optional<double> improvement_vs_plain_pct;
};

SwarmConfig config_for(Algorithm a, SwarmConfig base);

// Runs every (instance, algorithm, seed) cell with seeds first_seed .. first_seed + trials - 1.
// on_result is called as each cell finishes.
std::vector<BenchResult> run_bench(const std::vector<BenchInstance>& instances, const std::vector<Algorithm>& algorithms,
                                   const SwarmConfig& base, int trials, std::uint64_t first_seed,
                                   const std::function<void(const BenchResult&)>& on_result = {});

std::vector<BenchSummary> summarize(const std::vector<BenchResult>& results);

inline constexpr const char* kBenchResultsHeader = "algorithm,instance,seed,cost,time_s,iterations";
inline constexpr const char* kBenchSummaryHeader =
    "algorithm,instance,trials,mean_cost,sd_cost,mean_time_s,sd_time_s,improvement_vs_plain_pct";

std::string bench_result_row(const BenchResult& r);
std::string bench_summary_row(const BenchSummary& s);
std::string results_to_csv(const std::vector<BenchResult>& results);
std::string summary_to_csv(const std::vector<BenchSummary>& rows);

}  // namespace ipp

#endif  // IPP_BASELINES_HPP_
