#include <doctest.h>

#include <algorithm>
#include <set>

#include "ipp/baselines.hpp"
#include "ipp/dpso.hpp"
#include "ipp/errors.hpp"
#include "support.hpp"

using namespace ipp;
using test::tour_of;

namespace {

// Unit square 0-1-2-3 with diagonals sqrt(2).
TourGraph unit_square() {
    const double r = std::sqrt(2.0);
    return TourGraph::from_costs(4, {0, 1, r, 1, 1, 0, 1, r, r, 1, 0, 1, 1, r, 1, 0});
}

std::vector<Particle> particles_from(const std::vector<Tour>& tours, const TourGraph& g) {
    std::vector<Particle> out;
    for (const auto& t : tours) out.push_back(make_particle(t, g));
    return out;
}

Tour shuffled(int n, Rng& rng) {
    Tour t = identity_tour(n);
    std::shuffle(t.sequence.begin(), t.sequence.end() - 1, rng);
    t.sequence.back() = t.sequence.front();
    return t;
}

double min_fitness(std::span<const Particle> s) {
    double m = s.front().fitness;
    for (const auto& p : s) m = std::min(m, p.fitness);
    return m;
}

struct Recorder : SolveObserver {
    int generations = 0, mutations = 0, exchanges = 0;
    std::vector<std::string> failures;
    void on_generation(int, std::span<const Particle>, double) override { ++generations; }
    void on_mutation(std::span<const Particle> before, std::span<const Particle> after) override {
        ++mutations;
        if (after.size() != before.size()) failures.push_back("mutation changed the swarm size");
        if (min_fitness(after) > min_fitness(before)) failures.push_back("mutation lost the best particle");
    }
    void on_edge_exchange(std::span<const Particle> before, std::span<const Particle> after) override {
        ++exchanges;
        for (std::size_t i = 0; i < before.size(); ++i)
            if (after[i].fitness > before[i].fitness) failures.push_back("edge exchange made a particle worse");
    }
};

}  // namespace

TEST_CASE("back-and-forth cells on a 2 x 3 grid") {
    CoveragePlan plan = generate_viewpoints(test::grid_scene(2, 3));
    CHECK(boustrophedon_tour(plan) == tour_of({0, 1, 2, 5, 4, 3, 0}));
}

TEST_CASE("back-and-forth visits every cell once and moves between neighbours") {
    for (int rows = 1; rows <= 7; ++rows)
        for (int cols = 1; cols <= 7; ++cols) {
            auto cells = boustrophedon_cells(rows, cols);
            REQUIRE(cells.size() == static_cast<std::size_t>(rows * cols));
            CHECK(cells.front() == std::pair{0, 0});
            std::set<std::pair<int, int>> unique(cells.begin(), cells.end());
            CHECK(unique.size() == cells.size());
            int diagonal = 0;
            for (std::size_t k = 1; k < cells.size(); ++k) {
                const int dr = std::abs(cells[k].first - cells[k - 1].first);
                const int dc = std::abs(cells[k].second - cells[k - 1].second);
                CHECK(std::max(dr, dc) == 1);
                diagonal += dr + dc == 2;
            }
            const bool both_odd = rows % 2 == 1 && cols % 2 == 1;
            CHECK(diagonal == ((both_odd && rows > 1 && cols > 1) ? 1 : 0));
        }
}

TEST_CASE("single viewpoint solve is trivial") {
    auto g = TourGraph::from_costs(1, {0.0});
    SolveReport r = solve(g, nullptr, {});
    CHECK(r.best_tour == tour_of({0, 0}));
    CHECK(r.best_fitness == 0.0);
    CHECK(r.generations_run == 1);
    CHECK(r.convergence.size() == 1);
}

TEST_CASE("one viewpoint swarm is all identical") {
    auto g = TourGraph::from_costs(1, {0.0});
    Rng rng = make_stream(1, 0);
    CoveragePlan plan = generate_viewpoints(test::grid_scene(1, 1));
    for (const auto& p : initialize_swarm(g, &plan, {}, rng)) CHECK(p.position == tour_of({0, 0}));
}

TEST_CASE("seeded share of the swarm") {
    auto pipe = test::build_pipeline(test::grid_scene(3, 4));
    SwarmConfig cfg;
    cfg.swarm_size = 20;
    cfg.seed_fraction = 0.25;
    Rng rng = make_stream(9, 0);
    auto swarm = initialize_swarm(pipe.graph, &pipe.plan, cfg, rng);
    REQUIRE(swarm.size() == 20);
    const Tour seed = boustrophedon_tour(pipe.plan);
    CHECK(swarm[0].position == seed);
    for (int k = 1; k < 5; ++k) {
        int differing = 0;
        for (std::size_t i = 0; i + 1 < seed.sequence.size(); ++i)
            differing += swarm[k].position.sequence[i] != seed.sequence[i];
        CHECK(differing == 2);
    }
    for (const auto& p : swarm) CHECK_FALSE(tour_violation(p.position, 12).has_value());

    cfg.seed_fraction = 0.0;
    Rng rng2 = make_stream(9, 0);
    auto unseeded = initialize_swarm(pipe.graph, &pipe.plan, cfg, rng2);
    const auto matches = std::count_if(unseeded.begin(), unseeded.end(),
                                       [&](const Particle& p) { return p.position == seed; });
    CHECK(matches == 0);
}

TEST_CASE("mutation keeps the best third and disturbs the rest") {
    auto g = test::random_euclidean_graph(8, 2);
    Rng rng = make_stream(4, 0);
    std::vector<Tour> tours;
    std::set<std::vector<int>> canon;
    while (tours.size() < 9) {
        Tour t = shuffled(8, rng);
        if (canon.insert(canonical_form(t)).second) tours.push_back(t);
    }
    auto swarm = particles_from(tours, g);
    auto sorted = swarm;
    std::stable_sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.fitness < b.fitness; });

    auto out = random_mutation(swarm, g, 9, rng);
    REQUIRE(out.size() == 9);
    for (int k = 0; k < 3; ++k) CHECK(out[k].position == sorted[k].position);
    for (int k = 3; k < 9; ++k) {
        CHECK(out[k].position != sorted[k].position);
        CHECK(out[k].velocity.empty());
        CHECK(out[k].fitness == doctest::Approx(tour_length(g, out[k].position)));
    }
    CHECK(min_fitness(out) <= min_fitness(swarm));
}

TEST_CASE("collapsed swarm keeps one survivor") {
    auto g = test::random_euclidean_graph(8, 3);
    Rng rng = make_stream(4, 1);
    std::vector<Particle> swarm(12, make_particle(identity_tour(8), g));
    auto out = random_mutation(swarm, g, 12, rng);
    REQUIRE(out.size() == 12);
    CHECK(out[0].position == identity_tour(8));
    for (int k = 1; k < 12; ++k) CHECK(out[k].position != identity_tour(8));
    CHECK(min_fitness(out) <= swarm[0].fitness);
}

TEST_CASE("edge exchange uncrosses the square") {
    auto g = unit_square();
    Particle p = make_particle(tour_of({0, 2, 1, 3, 0}), g);
    Particle q = edge_exchange(p, g);
    CHECK(q.fitness == doctest::Approx(4.0));
    CHECK(q.fitness < p.fitness);
    CHECK(canonical_form(q.position) == canonical_form(tour_of({0, 1, 2, 3, 0})));
}

TEST_CASE("edge exchange leaves 2-opt optima and triangles alone") {
    auto g = unit_square();
    Particle p = make_particle(tour_of({0, 1, 2, 3, 0}), g);
    CHECK(edge_exchange(p, g).position == p.position);
    auto tri = TourGraph::from_costs(3, {0, 1, 2, 1, 0, 3, 2, 3, 0});
    Particle t = make_particle(tour_of({0, 1, 2, 0}), tri);
    CHECK(edge_exchange(t, tri).position == t.position);
}

TEST_CASE("edge exchange result is 2-opt optimal after repetition") {
    std::mt19937_64 pick(1);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = test::random_euclidean_graph(9, pick());
        Rng rng = make_stream(trial, 0);
        Particle p = make_particle(shuffled(9, rng), g);
        for (;;) {
            Particle q = edge_exchange(p, g);
            CHECK(q.fitness <= p.fitness);
            if (q.position == p.position) break;
            p = q;
        }
        // No segment reversal may shorten the fixed point.
        const auto& s = p.position.sequence;
        for (std::size_t i = 1; i + 1 < s.size(); ++i)
            for (std::size_t j = i + 1; j + 1 < s.size(); ++j) {
                auto t = s;
                std::reverse(t.begin() + i, t.begin() + j + 1);
                CHECK(tour_length_unchecked(g, t) >= p.fitness - 1e-12);
            }
    }
}

TEST_CASE("solve finds the optimum on small instances and is reproducible") {
    auto g = test::random_euclidean_graph(8, 42);
    const double opt = tour_length(g, brute_force_tsp(g));
    SwarmConfig cfg;
    cfg.master_seed = 7;
    Recorder rec;
    SolveReport a = solve(g, nullptr, cfg, &rec);
    CHECK(a.best_fitness == doctest::Approx(opt));
    CHECK(rec.failures.empty());
    CHECK(rec.generations == a.generations_run);
    CHECK(a.convergence.size() == static_cast<std::size_t>(a.generations_run));
    CHECK(std::is_sorted(a.convergence.rbegin(), a.convergence.rend()));
    CHECK(a.best_fitness == a.convergence.back());

    SolveReport b = solve(g, nullptr, cfg);
    CHECK(a.best_tour == b.best_tour);
    CHECK(a.convergence == b.convergence);

    cfg.parallel = false;
    SolveReport c = solve(g, nullptr, cfg);
    CHECK(a.best_tour == c.best_tour);
    CHECK(a.convergence == c.convergence);
}

TEST_CASE("stall rule ends the run early") {
    auto g = test::random_euclidean_graph(6, 1);
    SwarmConfig cfg;
    cfg.stall_generations = 5;
    SolveReport r = solve(g, nullptr, cfg);
    CHECK(r.generations_run < cfg.max_generations);
    const auto& cv = r.convergence;
    REQUIRE(cv.size() >= 5);
    CHECK(std::count(cv.end() - 5, cv.end(), cv.back()) == 5);
}

TEST_CASE("augmentation flags mirror the config") {
    auto g = test::random_euclidean_graph(5, 1);
    SwarmConfig cfg;
    cfg.mutation = false;
    cfg.seed_fraction = 0.0;
    auto r = solve(g, nullptr, cfg);
    CHECK_FALSE(r.augmentation_flags.init);
    CHECK_FALSE(r.augmentation_flags.mutation);
    CHECK(r.augmentation_flags.edge_exchange);
    CHECK(r.augmentation_flags.parallel);
}

TEST_CASE("invalid config is rejected") {
    auto g = test::random_euclidean_graph(5, 1);
    SwarmConfig cfg;
    cfg.w = 2.0;
    CHECK_THROWS_AS(solve(g, nullptr, cfg), InvalidArgument);
}
