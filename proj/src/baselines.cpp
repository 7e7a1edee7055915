#include "ipp/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

#include "ipp/errors.hpp"

namespace ipp {

Tour brute_force_tsp(const TourGraph& graph) {
    const int n = graph.size();
    if (n > kBruteForceLimit)
        throw InvalidArgument("brute_force_tsp is limited to " + std::to_string(kBruteForceLimit) + " nodes");
    if (n <= 3) return identity_tour(n);

    std::vector<int> rest(static_cast<std::size_t>(n) - 1);
    std::iota(rest.begin(), rest.end(), 1);
    std::vector<int> best_rest = rest;
    double best = std::numeric_limits<double>::infinity();
    do {
        if (rest.front() > rest.back()) continue;  // reversed duplicate
        double len = graph.cost(0, rest.front()) + graph.cost(rest.back(), 0);
        for (std::size_t k = 0; k + 1 < rest.size() && len < best; ++k) len += graph.cost(rest[k], rest[k + 1]);
        if (len < best) {
            best = len;
            best_rest = rest;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));

    Tour t;
    t.sequence.push_back(0);
    t.sequence.insert(t.sequence.end(), best_rest.begin(), best_rest.end());
    t.sequence.push_back(0);
    return t;
}

std::optional<Tour> exact_tsp(const TourGraph& graph, bool finite_edges_only) {
    const int n = graph.size();
    if (n > kExactDpLimit) throw InvalidArgument("exact_tsp is limited to " + std::to_string(kExactDpLimit) + " nodes");
    const double inf = std::numeric_limits<double>::infinity();
    auto edge = [&](int i, int j) { return finite_edges_only && graph.is_virtual(i, j) ? inf : graph.cost(i, j); };
    if (n <= 1) return identity_tour(n);
    if (n == 2) {
        if (edge(0, 1) == inf) return std::nullopt;
        return identity_tour(2);
    }

    // dp[mask][j]: cheapest path from 0 through the nodes in mask (bits for nodes 1..n-1) ending at j.
    const int m = n - 1;
    const std::size_t states = std::size_t{1} << m;
    std::vector<double> dp(states * m, inf);
    std::vector<std::int8_t> parent(states * m, -1);
    for (int j = 0; j < m; ++j) dp[(std::size_t{1} << j) * m + j] = edge(0, j + 1);
    for (std::size_t mask = 1; mask < states; ++mask) {
        for (int j = 0; j < m; ++j) {
            if (!(mask >> j & 1)) continue;
            const double here = dp[mask * m + j];
            if (here == inf) continue;
            for (int k = 0; k < m; ++k) {
                if (mask >> k & 1) continue;
                const std::size_t next = mask | (std::size_t{1} << k);
                const double cand = here + edge(j + 1, k + 1);
                if (cand < dp[next * m + k]) {
                    dp[next * m + k] = cand;
                    parent[next * m + k] = static_cast<std::int8_t>(j);
                }
            }
        }
    }
    const std::size_t full = states - 1;
    double best = inf;
    int last = -1;
    for (int j = 0; j < m; ++j) {
        const double cand = dp[full * m + j] + edge(j + 1, 0);
        if (cand < best) {
            best = cand;
            last = j;
        }
    }
    if (last < 0) return std::nullopt;

    std::vector<int> rev;
    std::size_t mask = full;
    for (int j = last; j >= 0;) {
        rev.push_back(j + 1);
        const int p = parent[mask * m + j];
        mask &= ~(std::size_t{1} << j);
        j = p;
    }
    Tour t;
    t.sequence.push_back(0);
    t.sequence.insert(t.sequence.end(), rev.rbegin(), rev.rend());
    t.sequence.push_back(0);
    return t;
}

SolveReport plain_dpso(const TourGraph& graph, SwarmConfig cfg) {
    return solve(graph, nullptr, config_for(Algorithm::plain, std::move(cfg)));
}

HeuristicResult nearest_neighbor_two_opt(const TourGraph& graph) {
    const int n = graph.size();
    HeuristicResult out;
    if (n <= 1) {
        out.tour = identity_tour(n);
        return out;
    }
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    Tour t;
    t.sequence.push_back(0);
    used[0] = 1;
    for (int step = 1; step < n; ++step) {
        const int from = t.sequence.back();
        int next = -1;
        for (int j = 0; j < n; ++j)
            if (!used[j] && (next < 0 || graph.cost(from, j) < graph.cost(from, next))) next = j;
        used[next] = 1;
        t.sequence.push_back(next);
    }
    t.sequence.push_back(0);

    Particle p = make_particle(std::move(t), graph);
    for (;;) {
        const double before = p.fitness;
        p = edge_exchange(std::move(p), graph);
        if (!(p.fitness < before)) break;
        ++out.improving_moves;
    }
    out.tour = std::move(p.position);
    out.cost = p.fitness;
    return out;
}

std::optional<double> dijkstra_oracle(const VoxelGrid& grid, const Voxel& start, const Voxel& goal,
                                      const AxisWeights& weights) {
    if (!grid.in_bounds(start) || !grid.in_bounds(goal) || grid.occupied(start) || grid.occupied(goal))
        throw InvalidArgument("dijkstra_oracle endpoints must be free voxels inside the grid");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(grid.size(), inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    const std::size_t s = grid.index(start), g = grid.index(goal);
    dist[s] = 0.0;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
        const auto [d, idx] = queue.top();
        queue.pop();
        if (d > dist[idx]) continue;
        if (idx == g) return d;
        const Voxel v = grid.voxel_at(idx);
        for (int dz = -1; dz <= 1; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (!dx && !dy && !dz) continue;
                    const Voxel n{v.x + dx, v.y + dy, v.z + dz};
                    if (!grid.in_bounds(n) || grid.occupied(n)) continue;
                    const double nd = d + weights[0] * dx * dx + weights[1] * dy * dy + weights[2] * dz * dz;
                    const std::size_t ni = grid.index(n);
                    if (nd < dist[ni]) {
                        dist[ni] = nd;
                        queue.emplace(nd, ni);
                    }
                }
    }
    return std::nullopt;
}

const std::vector<Algorithm>& all_algorithms() {
    static const std::vector<Algorithm> all{Algorithm::enhanced,         Algorithm::no_init_seed, Algorithm::no_mutation,
                                            Algorithm::no_edge_exchange, Algorithm::serial,       Algorithm::plain,
                                            Algorithm::nn_two_opt};
    return all;
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::enhanced: return "enhanced";
        case Algorithm::no_init_seed: return "no_init_seed";
        case Algorithm::no_mutation: return "no_mutation";
        case Algorithm::no_edge_exchange: return "no_edge_exchange";
        case Algorithm::serial: return "serial";
        case Algorithm::plain: return "plain";
        case Algorithm::nn_two_opt: return "nn_two_opt";
    }
    return "unknown";
}

SwarmConfig config_for(Algorithm a, SwarmConfig base) {
    switch (a) {
        case Algorithm::enhanced: break;
        case Algorithm::no_init_seed: base.seed_fraction = 0.0; break;
        case Algorithm::no_mutation: base.mutation = false; break;
        case Algorithm::no_edge_exchange: base.edge_exchange = false; break;
        case Algorithm::serial: base.parallel = false; break;
        case Algorithm::plain:
            base.seed_fraction = 0.0;
            base.mutation = false;
            base.edge_exchange = false;
            break;
        case Algorithm::nn_two_opt: break;
    }
    return base;
}

std::vector<BenchResult> run_bench(const std::vector<BenchInstance>& instances, const std::vector<Algorithm>& algorithms,
                                   const SwarmConfig& base, int trials, std::uint64_t first_seed,
                                   const std::function<void(const BenchResult&)>& on_result) {
    std::vector<BenchResult> out;
    for (const auto& inst : instances) {
        const CoveragePlan* plan = inst.plan ? &*inst.plan : nullptr;
        for (Algorithm a : algorithms) {
            for (int t = 0; t < trials; ++t) {
                BenchResult r;
                r.algorithm = algorithm_name(a);
                r.instance = inst.id;
                r.seed = first_seed + static_cast<std::uint64_t>(t);
                if (a == Algorithm::nn_two_opt) {
                    const auto t0 = std::chrono::steady_clock::now();
                    const auto h = nearest_neighbor_two_opt(inst.graph);
                    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                    r.best_cost = h.cost;
                    r.iterations = h.improving_moves;
                } else {
                    SwarmConfig cfg = config_for(a, base);
                    cfg.master_seed = r.seed;
                    const auto rep = solve(inst.graph, plan, cfg);
                    r.best_cost = rep.best_fitness;
                    r.wall_time = rep.wall_time;
                    r.iterations = rep.generations_run;
                }
                if (on_result) on_result(r);
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

namespace {

std::pair<double, double> mean_sd(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

std::vector<BenchSummary> summarize(const std::vector<BenchResult>& results) {
    // Keeps first-appearance order of (instance, algorithm) cells.
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::vector<const BenchResult*>> cells;
    std::map<std::pair<std::string, std::uint64_t>, double> plain_cost;
    for (const auto& r : results) {
        auto key = std::make_pair(r.instance, r.algorithm);
        if (!cells.count(key)) order.push_back(key);
        cells[key].push_back(&r);
        if (r.algorithm == algorithm_name(Algorithm::plain)) plain_cost[{r.instance, r.seed}] = r.best_cost;
    }

    std::vector<BenchSummary> out;
    for (const auto& key : order) {
        const auto& rows = cells[key];
        std::vector<double> costs, times, improvements;
        for (const auto* r : rows) {
            costs.push_back(r->best_cost);
            times.push_back(r->wall_time);
            auto it = plain_cost.find({r->instance, r->seed});
            if (it != plain_cost.end() && it->second > 0)
                improvements.push_back(100.0 * (it->second - r->best_cost) / it->second);
        }
        BenchSummary s;
        s.instance = key.first;
        s.algorithm = key.second;
        s.trials = static_cast<int>(rows.size());
        std::tie(s.mean_cost, s.sd_cost) = mean_sd(costs);
        std::tie(s.mean_time, s.sd_time) = mean_sd(times);
        if (improvements.size() == rows.size()) s.improvement_vs_plain_pct = mean_sd(improvements).first;
        out.push_back(std::move(s));
    }
    return out;
}

std::string bench_result_row(const BenchResult& r) {
    return r.algorithm + "," + r.instance + "," + std::to_string(r.seed) + "," + format_number(r.best_cost) + "," +
           format_number(r.wall_time) + "," + std::to_string(r.iterations);
}

std::string bench_summary_row(const BenchSummary& s) {
    return s.algorithm + "," + s.instance + "," + std::to_string(s.trials) + "," + format_number(s.mean_cost) + "," +
           format_number(s.sd_cost) + "," + format_number(s.mean_time) + "," + format_number(s.sd_time) + "," +
           (s.improvement_vs_plain_pct ? format_number(*s.improvement_vs_plain_pct) : std::string());
}

std::string results_to_csv(const std::vector<BenchResult>& results) {
    std::string out = std::string(kBenchResultsHeader) + "\n";
    for (const auto& r : results) out += bench_result_row(r) + "\n";
    return out;
}

std::string summary_to_csv(const std::vector<BenchSummary>& rows) {
    std::string out = std::string(kBenchSummaryHeader) + "\n";
    for (const auto& s : rows) out += bench_summary_row(s) + "\n";
    return out;
}

}  // namespace ipp
