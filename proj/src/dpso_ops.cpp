#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ipp/dpso.hpp"
#include "ipp/errors.hpp"

namespace ipp {

namespace {

// Maps arbitrary node labels onto 0..n-1 so positions can be tracked in a flat array.
class Labels {
public:
    explicit Labels(std::span<const int> nodes) : sorted_(nodes.begin(), nodes.end()) {
        std::sort(sorted_.begin(), sorted_.end());
        dense_ = sorted_.empty() || (sorted_.front() == 0 && sorted_.back() == static_cast<int>(sorted_.size()) - 1);
    }
    int index(int label) const {
        if (dense_) return label >= 0 && label < static_cast<int>(sorted_.size()) ? label : -1;
        auto it = std::lower_bound(sorted_.begin(), sorted_.end(), label);
        return it != sorted_.end() && *it == label ? static_cast<int>(it - sorted_.begin()) : -1;
    }
    const std::vector<int>& sorted() const { return sorted_; }

private:
    std::vector<int> sorted_;
    bool dense_{false};
};

void require_closed_distinct(const Tour& x, const char* name) {
    const auto& s = x.sequence;
    if (s.empty()) throw InvalidArgument(std::string(name) + ": tour is empty");
    if (s.front() != s.back()) throw InvalidArgument(std::string(name) + ": open loop");
    std::vector<int> body(s.begin(), s.end() - 1);
    std::sort(body.begin(), body.end());
    if (std::adjacent_find(body.begin(), body.end()) != body.end())
        throw InvalidArgument(std::string(name) + ": node repeated");
}

std::span<const int> body_of(const Tour& x) { return {x.sequence.data(), x.sequence.size() - 1}; }

// pos[label] for a dense tour over 0..n-1.
std::vector<int> dense_positions(const std::vector<int>& seq) {
    const std::size_t n = seq.size() - 1;
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[seq[i]] = static_cast<int>(i);
    return pos;
}

void apply_dense(std::vector<int>& seq, std::vector<int>& pos, std::span<const Transposition> v) {
    for (const auto& [a, b] : v) {
        const int pa = pos[a], pb = pos[b];
        seq[pa] = b;
        seq[pb] = a;
        pos[a] = pb;
        pos[b] = pa;
    }
    seq.back() = seq.front();
}

// Left-to-right repair of `from` towards `to`, both dense over 0..n-1.
void subtract_dense(const std::vector<int>& to, std::vector<int> from, std::vector<Transposition>& out) {
    auto pos = dense_positions(from);
    const std::size_t n = from.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        const int have = from[i], want = to[i];
        if (have == want) continue;
        out.emplace_back(have, want);
        const int pw = pos[want];
        from[i] = want;
        from[pw] = have;
        pos[want] = static_cast<int>(i);
        pos[have] = pw;
    }
}

std::size_t scaled_length(double c, std::size_t len) {
    const auto k = static_cast<std::size_t>(std::floor(c * static_cast<double>(len) + 0.5));
    return std::min(k, len);
}

void check_scale(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("velocity scale factor must lie in [0, 1]");
}

void swap_positions(std::vector<int>& seq, std::size_t i, std::size_t j) {
    std::swap(seq[i], seq[j]);
    seq.back() = seq.front();
}

}  // namespace

Tour add_position_velocity(const Tour& x, const Velocity& v) {
    require_closed_distinct(x, "position");
    const Labels labels(body_of(x));
    const std::size_t n = x.sequence.size() - 1;

    std::vector<int> seq(n + 1), pos(n);
    for (std::size_t i = 0; i < n; ++i) {
        seq[i] = labels.index(x.sequence[i]);
        pos[seq[i]] = static_cast<int>(i);
    }
    seq[n] = seq[0];

    std::vector<Transposition> dense;
    dense.reserve(v.size());
    for (const auto& [a, b] : v.transpositions) {
        const int ia = labels.index(a), ib = labels.index(b);
        if (ia < 0 || ib < 0)
            throw InvalidArgument("velocity names node " + std::to_string(ia < 0 ? a : b) + " which is not in the tour");
        dense.emplace_back(ia, ib);
    }
    apply_dense(seq, pos, dense);

    Tour out;
    out.sequence.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out.sequence[i] = labels.sorted()[seq[i]];
    return out;
}

Velocity subtract_positions(const Tour& x2, const Tour& x1) {
    require_closed_distinct(x1, "x1");
    require_closed_distinct(x2, "x2");
    if (x1.sequence.size() != x2.sequence.size()) throw InvalidArgument("tours have different lengths");
    const Labels labels(body_of(x1));
    if (labels.sorted() != Labels(body_of(x2)).sorted()) throw InvalidArgument("tours cover different node sets");

    auto densify = [&](const Tour& t) {
        std::vector<int> s(t.sequence.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = labels.index(t.sequence[i]);
        return s;
    };
    std::vector<Transposition> dense;
    subtract_dense(densify(x2), densify(x1), dense);

    Velocity v;
    v.transpositions.reserve(dense.size());
    for (const auto& [a, b] : dense) v.transpositions.emplace_back(labels.sorted()[a], labels.sorted()[b]);
    return v;
}

Velocity add_velocities(const Velocity& v1, const Velocity& v2) {
    Velocity v;
    v.transpositions.reserve(v1.size() + v2.size());
    v.transpositions.insert(v.transpositions.end(), v1.transpositions.begin(), v1.transpositions.end());
    v.transpositions.insert(v.transpositions.end(), v2.transpositions.begin(), v2.transpositions.end());
    return v;
}

Velocity scale_velocity(double c, const Velocity& v) {
    check_scale(c);
    Velocity out;
    const std::size_t k = c == 0.0 ? 0 : scaled_length(c, v.size());
    out.transpositions.assign(v.transpositions.begin(), v.transpositions.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

std::vector<std::string> validate_config(const SwarmConfig& cfg) {
    std::vector<std::string> out;
    if (cfg.swarm_size < 3) out.emplace_back("swarm_size: must be >= 3");
    auto coefficient = [&](double c, const char* name) {
        if (!(c >= 0.0 && c <= 1.0)) out.push_back(std::string(name) + ": must lie in [0, 1]");
    };
    coefficient(cfg.w, "w");
    coefficient(cfg.phi1, "phi1");
    coefficient(cfg.phi2, "phi2");
    if (cfg.max_generations < 1) out.emplace_back("max_generations: must be >= 1");
    if (cfg.stall_generations < 1) out.emplace_back("stall_generations: must be >= 1");
    if (cfg.mutation_period < 1) out.emplace_back("mutation_period: must be >= 1");
    if (!(cfg.seed_fraction >= 0.0 && cfg.seed_fraction <= 1.0)) out.emplace_back("seed_fraction: must lie in [0, 1]");
    return out;
}

Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x9e3779b9u};
    return Rng(seq);
}

Particle make_particle(Tour position, const TourGraph& graph) {
    Particle p;
    p.fitness = tour_length(graph, position);
    p.position = std::move(position);
    p.local_best = p.position;
    p.local_best_fitness = p.fitness;
    return p;
}

Particle update_particle(Particle p, const Tour& global_best, const SwarmConfig& cfg, const TourGraph& graph,
                         double r1, double r2) {
    const double c1 = cfg.phi1 * r1, c2 = cfg.phi2 * r2;
    check_scale(cfg.w);
    check_scale(c1);
    check_scale(c2);

    auto& seq = p.position.sequence;
    std::vector<Transposition> next;
    const std::size_t keep = scaled_length(cfg.w, p.velocity.size());
    next.assign(p.velocity.transpositions.begin(), p.velocity.transpositions.begin() + static_cast<std::ptrdiff_t>(keep));

    std::vector<Transposition> diff;
    if (c1 > 0.0) {
        subtract_dense(p.local_best.sequence, seq, diff);
        next.insert(next.end(), diff.begin(), diff.begin() + static_cast<std::ptrdiff_t>(scaled_length(c1, diff.size())));
    }
    if (c2 > 0.0) {
        diff.clear();
        subtract_dense(global_best.sequence, seq, diff);
        next.insert(next.end(), diff.begin(), diff.begin() + static_cast<std::ptrdiff_t>(scaled_length(c2, diff.size())));
    }

    auto pos = dense_positions(seq);
    apply_dense(seq, pos, next);
    p.velocity.transpositions = std::move(next);
    p.fitness = tour_length_unchecked(graph, seq);
    if (p.fitness < p.local_best_fitness) {
        p.local_best = p.position;
        p.local_best_fitness = p.fitness;
    }
    return p;
}

Particle update_particle(Particle p, const Tour& global_best, const SwarmConfig& cfg, const TourGraph& graph, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r1 = unit(rng);
    const double r2 = unit(rng);
    return update_particle(std::move(p), global_best, cfg, graph, r1, r2);
}

std::vector<std::pair<int, int>> boustrophedon_cells(int rows, int cols) {
    std::vector<std::pair<int, int>> out;
    if (rows < 1 || cols < 1) return out;
    out.reserve(static_cast<std::size_t>(rows) * cols);
    if (rows == 1 || cols == 1) {
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) out.emplace_back(r, c);
        return out;
    }
    if (rows % 2 != 0 && cols % 2 == 0) {
        for (auto [a, b] : boustrophedon_cells(cols, rows)) out.emplace_back(b, a);
        return out;
    }

    for (int c = 0; c < cols; ++c) out.emplace_back(0, c);
    // rows swept over columns 1..cols-1 before the return lane
    const int swept = rows % 2 == 0 ? rows - 1 : rows - 3;
    for (int r = 1; r <= swept; ++r) {
        if (r % 2 == 1) {
            for (int c = cols - 1; c >= 1; --c) out.emplace_back(r, c);
        } else {
            for (int c = 1; c < cols; ++c) out.emplace_back(r, c);
        }
    }
    if (rows % 2 != 0) {
        for (int k = 0; k < cols - 1; ++k) {
            const int c = cols - 1 - k;
            if (k % 2 == 0) {
                out.emplace_back(rows - 2, c);
                out.emplace_back(rows - 1, c);
            } else {
                out.emplace_back(rows - 1, c);
                out.emplace_back(rows - 2, c);
            }
        }
    }
    for (int r = rows - 1; r >= 1; --r) out.emplace_back(r, 0);
    return out;
}

Tour boustrophedon_tour(const CoveragePlan& plan) {
    Tour t;
    for (int s = 0; s < static_cast<int>(plan.cells_per_surface.size()); ++s) {
        const auto& g = plan.cells_per_surface[s];
        for (auto [r, c] : boustrophedon_cells(g.rows, g.cols)) t.sequence.push_back(plan.id_of(s, r, c));
    }
    if (!t.sequence.empty()) t.sequence.push_back(t.sequence.front());
    return t;
}

std::vector<Particle> initialize_swarm(const TourGraph& graph, const CoveragePlan* plan, const SwarmConfig& cfg,
                                       Rng& rng) {
    const int n = graph.size();
    if (plan && static_cast<int>(plan->viewpoints.size()) != n)
        throw InvalidArgument("coverage plan and graph disagree on the number of nodes");
    const Tour seed = plan ? boustrophedon_tour(*plan) : identity_tour(n);
    const int n_seeded = std::min(cfg.swarm_size, static_cast<int>(std::floor(cfg.seed_fraction * cfg.swarm_size + 0.5)));

    std::vector<Particle> swarm;
    swarm.reserve(cfg.swarm_size);
    for (int k = 0; k < cfg.swarm_size; ++k) {
        Tour t;
        if (k < n_seeded) {
            t = seed;
            if (k > 0 && n >= 2) {
                std::uniform_int_distribution<int> pick(0, n - 1);
                const int i = pick(rng);
                int j = pick(rng);
                while (j == i) j = pick(rng);
                swap_positions(t.sequence, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            }
        } else {
            t = identity_tour(n);
            for (int i = n - 1; i > 0; --i) {
                std::uniform_int_distribution<int> pick(0, i);
                std::swap(t.sequence[i], t.sequence[pick(rng)]);
            }
            t.sequence.back() = t.sequence.front();
        }
        swarm.push_back(make_particle(std::move(t), graph));
    }
    return swarm;
}

std::vector<int> canonical_form(const Tour& tour) {
    const std::size_t n = tour.sequence.empty() ? 0 : tour.sequence.size() - 1;
    if (n == 0) return {};
    const auto& s = tour.sequence;
    const std::size_t start = static_cast<std::size_t>(std::min_element(s.begin(), s.end() - 1) - s.begin());
    std::vector<int> fwd(n), bwd(n);
    for (std::size_t k = 0; k < n; ++k) {
        fwd[k] = s[(start + k) % n];
        bwd[k] = s[(start + n - k) % n];
    }
    return n >= 2 && bwd[1] < fwd[1] ? bwd : fwd;
}

namespace {

void disturb(Particle& p, const TourGraph& graph, Rng& rng) {
    const int n = graph.size();
    p.velocity.transpositions.clear();
    if (n >= 2) {
        const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
        const int k_max = std::max(2, n / 4);
        std::uniform_int_distribution<int> pick_k(1, k_max);
        const int k = static_cast<int>(std::min<long long>(pick_k(rng), pairs));
        std::uniform_int_distribution<int> pick(0, n - 1);
        std::set<std::pair<int, int>> used;
        while (static_cast<int>(used.size()) < k) {
            int i = pick(rng), j = pick(rng);
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            if (!used.emplace(i, j).second) continue;
            swap_positions(p.position.sequence, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    p.fitness = tour_length_unchecked(graph, p.position.sequence);
    if (p.fitness < p.local_best_fitness) {
        p.local_best = p.position;
        p.local_best_fitness = p.fitness;
    }
}

}  // namespace

std::vector<Particle> random_mutation(std::vector<Particle> swarm, const TourGraph& graph, int target_size, Rng& rng) {
    if (swarm.empty()) throw InvalidArgument("random_mutation needs a non-empty swarm");
    if (target_size < 1) throw InvalidArgument("random_mutation target size must be >= 1");

    // Sort first so each duplicate class is represented by its cheapest copy; rotations of one cycle
    // can differ in the last bits of their summed cost.
    std::stable_sort(swarm.begin(), swarm.end(),
                     [](const Particle& a, const Particle& b) { return a.fitness < b.fitness; });
    std::vector<Particle> survivors;
    survivors.reserve(swarm.size());
    std::set<std::vector<int>> seen;
    for (auto& p : swarm) {
        if (seen.insert(canonical_form(p.position)).second) survivors.push_back(std::move(p));
    }

    const std::size_t keep = std::min(survivors.size(), static_cast<std::size_t>((target_size + 2) / 3));
    std::vector<Particle> out;
    out.reserve(static_cast<std::size_t>(target_size));
    for (std::size_t i = 0; i < survivors.size() && out.size() < static_cast<std::size_t>(target_size); ++i) {
        out.push_back(std::move(survivors[i]));
        if (i >= keep) disturb(out.back(), graph, rng);
    }
    for (std::size_t c = 0; out.size() < static_cast<std::size_t>(target_size); ++c) {
        Particle clone = out[c % keep];
        disturb(clone, graph, rng);
        out.push_back(std::move(clone));
    }
    return out;
}

Particle edge_exchange(Particle p, const TourGraph& graph) {
    auto& s = p.position.sequence;
    const int n = static_cast<int>(s.size()) - 1;
    if (n < 4) return p;

    double best_delta = 0.0;
    int best_i = -1, best_j = -1;
    for (int i = 0; i < n - 1; ++i) {
        const int a = s[i], b = s[i + 1];
        const double ab = graph.cost(a, b);
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // reverses the whole cycle
            const int c = s[j], d = s[j + 1];
            const double delta = (graph.cost(a, c) - ab) + (graph.cost(b, d) - graph.cost(c, d));
            if (delta < best_delta) {
                best_delta = delta;
                best_i = i;
                best_j = j;
            }
        }
    }
    if (best_i < 0) return p;

    std::vector<int> candidate = s;
    std::reverse(candidate.begin() + best_i + 1, candidate.begin() + best_j + 1);
    const double fitness = tour_length_unchecked(graph, candidate);
    if (!(fitness < p.fitness)) return p;  // round-off made the move a no-op

    s = std::move(candidate);
    p.fitness = fitness;
    if (p.fitness < p.local_best_fitness) {
        p.local_best = p.position;
        p.local_best_fitness = p.fitness;
    }
    return p;
}

}  // namespace ipp
