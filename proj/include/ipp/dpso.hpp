#ifndef IPP_DPSO_HPP_
#define IPP_DPSO_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ipp/tour_graph.hpp"
#include "ipp/viewpoints.hpp"

namespace ipp {

// Swap of the two node ids wherever they sit in the tour.
using Transposition = std::pair<int, int>;

struct Velocity {
    std::vector<Transposition> transpositions;

    std::size_t size() const { return transpositions.size(); }
    bool empty() const { return transpositions.empty(); }
    friend bool operator==(const Velocity&, const Velocity&) = default;
};

// x + v: applies the transpositions left to right; the closing entry follows the first one.
// Throws InvalidArgument if v names a node that is not in x.
Tour add_position_velocity(const Tour& x, const Velocity& v);

// x2 - x1, built by the left-to-right repair of x1 towards x2, so that x1 + (x2 - x1) == x2
// and the result has at most n - 1 transpositions. Throws InvalidArgument on mismatched node sets.
Velocity subtract_positions(const Tour& x2, const Tour& x1);

// v1 followed by v2.
Velocity add_velocities(const Velocity& v1, const Velocity& v2);

// c = 0 gives the empty velocity; 0 < c <= 1 keeps the first round(c * |v|) transpositions
// (halves round up). Throws InvalidArgument outside [0, 1].
Velocity scale_velocity(double c, const Velocity& v);

struct Particle {
    Tour position;
    Velocity velocity;
    Tour local_best;
    double local_best_fitness{0.0};
    double fitness{0.0};
};

struct SwarmConfig {
    int swarm_size{100};
    double w{1.0};
    double phi1{0.4};
    double phi2{0.4};
    int max_generations{200};
    int stall_generations{30};
    int mutation_period{3};
    double seed_fraction{0.10};
    std::uint64_t master_seed{1};
    bool parallel{true};
    bool mutation{true};
    bool edge_exchange{true};
};

// Empty iff the configuration is usable.
std::vector<std::string> validate_config(const SwarmConfig& cfg);

struct AugmentationFlags {
    bool init{false};
    bool mutation{false};
    bool edge_exchange{false};
    bool parallel{false};
};

struct SolveReport {
    Tour best_tour;
    double best_fitness{0.0};
    std::vector<double> convergence;  // global best after each generation
    int generations_run{0};
    double wall_time{0.0};            // seconds
    AugmentationFlags augmentation_flags;
};

using Rng = std::mt19937_64;

// Independent deterministic stream `stream_id` derived from the master seed.
Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_id);

// One velocity/position update with explicit r1, r2.
Particle update_particle(Particle p, const Tour& global_best, const SwarmConfig& cfg, const TourGraph& graph,
                         double r1, double r2);
// One velocity/position update drawing r1, r2 uniformly in [0, 1) from the particle's stream.
Particle update_particle(Particle p, const Tour& global_best, const SwarmConfig& cfg, const TourGraph& graph, Rng& rng);

// Deterministic back-and-forth tour over the viewpoint grids, surfaces visited in index order.
//
// Each surface grid is swept row by row with alternating direction, leaving the first column as a
// return lane so the sweep ends next to where it started. When the row count is odd the sweep runs
// along columns instead; when both counts are odd the last two rows are zig-zagged column-wise and
// a single diagonal step joins the return lane. On an obstacle-free grid with equal axis weights
// this closed tour is optimal.
Tour boustrophedon_tour(const CoveragePlan& plan);

// Visiting order of one rows x cols grid as (row, col) cells, starting at (0, 0).
std::vector<std::pair<int, int>> boustrophedon_cells(int rows, int cols);

Particle make_particle(Tour position, const TourGraph& graph);

// round(seed_fraction * swarm_size) particles start from the back-and-forth tour (the first one
// exact, the others with one random transposition), the rest from uniform random permutations.
// Without a plan the identity tour 0, 1, ..., n-1 stands in for the back-and-forth tour.
std::vector<Particle> initialize_swarm(const TourGraph& graph, const CoveragePlan* plan, const SwarmConfig& cfg,
                                       Rng& rng);

// Rotation to start at the smallest node, direction chosen so the second entry is the smaller one.
std::vector<int> canonical_form(const Tour& tour);

// Filters duplicate tours, keeps the best third (ceil(target_size / 3)) untouched and disturbs every
// other particle with k transpositions on distinct position pairs, k uniform in [1, max(2, n / 4)].
// Refills to target_size with disturbed clones of the kept particles. The result is ordered kept first.
std::vector<Particle> random_mutation(std::vector<Particle> swarm, const TourGraph& graph, int target_size, Rng& rng);

// Best strictly improving 2-opt segment reversal; returns p unchanged when none exists.
Particle edge_exchange(Particle p, const TourGraph& graph);

// Hooks for tracing a run; all default to no-ops.
class SolveObserver {
public:
    virtual ~SolveObserver() = default;
    virtual void on_generation(int /*generation*/, std::span<const Particle> /*swarm*/, double /*global_best*/) {}
    virtual void on_mutation(std::span<const Particle> /*before*/, std::span<const Particle> /*after*/) {}
    virtual void on_edge_exchange(std::span<const Particle> /*before*/, std::span<const Particle> /*after*/) {}
};

// Enhanced DPSO. `plan` may be null (graphs loaded from a cost matrix).
SolveReport solve(const TourGraph& graph, const CoveragePlan* plan, const SwarmConfig& cfg,
                  SolveObserver* observer = nullptr);

}  // namespace ipp

#endif  // IPP_DPSO_HPP_
