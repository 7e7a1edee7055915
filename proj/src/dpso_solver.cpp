#include <chrono>

#include "ipp/dpso.hpp"
#include "ipp/errors.hpp"
#include "parallel.hpp"

namespace ipp {

namespace {

std::size_t best_index(const std::vector<Particle>& swarm) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < swarm.size(); ++i)
        if (swarm[i].fitness < swarm[best].fitness) best = i;
    return best;
}

}  // namespace

SolveReport solve(const TourGraph& graph, const CoveragePlan* plan, const SwarmConfig& cfg, SolveObserver* observer) {
    if (auto problems = validate_config(cfg); !problems.empty()) throw InvalidArgument("swarm config: " + problems.front());
    const auto t0 = std::chrono::steady_clock::now();

    SolveReport report;
    report.augmentation_flags = {cfg.seed_fraction > 0.0, cfg.mutation, cfg.edge_exchange, cfg.parallel};
    const int n = graph.size();
    if (n <= 1) {
        report.best_tour = identity_tour(n);
        report.best_fitness = 0.0;
        report.convergence = {0.0};
        report.generations_run = 1;
        report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report;
    }

    // Streams 0..swarm_size-1 belong to particle slots, then one for mutation and one for initialization.
    const auto swarm_size = static_cast<std::size_t>(cfg.swarm_size);
    std::vector<Rng> streams;
    streams.reserve(swarm_size);
    for (std::size_t i = 0; i < swarm_size; ++i) streams.push_back(make_stream(cfg.master_seed, i));
    Rng mutation_rng = make_stream(cfg.master_seed, swarm_size);
    Rng init_rng = make_stream(cfg.master_seed, swarm_size + 1);

    std::vector<Particle> swarm = initialize_swarm(graph, plan, cfg, init_rng);
    std::size_t b = best_index(swarm);
    Tour global_best = swarm[b].position;
    double global_best_fitness = swarm[b].fitness;

    int stall = 0;
    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
        // Every particle reads the previous generation's global best; the join is the barrier.
        detail::parallel_for(swarm_size, cfg.parallel, [&](std::size_t i) {
            swarm[i] = update_particle(std::move(swarm[i]), global_best, cfg, graph, streams[i]);
        });

        if (cfg.mutation && gen % cfg.mutation_period == 0) {
            std::vector<Particle> before;
            if (observer) before = swarm;
            swarm = random_mutation(std::move(swarm), graph, cfg.swarm_size, mutation_rng);
            if (observer) observer->on_mutation(before, swarm);
        }

        bool improved = false;
        b = best_index(swarm);
        if (swarm[b].fitness < global_best_fitness) {
            global_best = swarm[b].position;
            global_best_fitness = swarm[b].fitness;
            improved = true;
        } else if (cfg.edge_exchange) {
            std::vector<Particle> before;
            if (observer) before = swarm;
            detail::parallel_for(swarm_size, cfg.parallel,
                                 [&](std::size_t i) { swarm[i] = edge_exchange(std::move(swarm[i]), graph); });
            if (observer) observer->on_edge_exchange(before, swarm);
            b = best_index(swarm);
            if (swarm[b].fitness < global_best_fitness) {
                global_best = swarm[b].position;
                global_best_fitness = swarm[b].fitness;
                improved = true;
            }
        }

        report.convergence.push_back(global_best_fitness);
        report.generations_run = gen;
        if (observer) observer->on_generation(gen, swarm, global_best_fitness);

        stall = improved ? 0 : stall + 1;
        if (stall >= cfg.stall_generations) break;
    }

    report.best_tour = std::move(global_best);
    report.best_fitness = global_best_fitness;
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace ipp
