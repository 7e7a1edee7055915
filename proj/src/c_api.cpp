#include "ipp/ipp.h"

#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "ipp/baselines.hpp"
#include "ipp/dpso.hpp"
#include "ipp/errors.hpp"
#include "ipp/plan_output.hpp"
#include "ipp/scene.hpp"
#include "ipp/tour_graph.hpp"
#include "ipp/viewpoints.hpp"
#include "ipp/voxel_grid.hpp"

struct ipp_scene {
    ipp::Scene scene;
};

struct ipp_graph {
    ipp::TourGraph graph;
};

struct ipp_planner {
    ipp::Scene scene;
    ipp::CoveragePlan plan;
    ipp_graph graph;
};

struct ipp_report {
    ipp::SolveReport report;
};

struct ipp_strings {
    std::vector<std::string> items;
};

struct ipp_bench {
    std::vector<ipp::BenchInstance> instances;
};

namespace {

thread_local std::string last_error;

ipp_status fail(ipp_status status, const std::string& message) {
    last_error = message;
    return status;
}

template <class Fn>
ipp_status guarded(const char* where, Fn&& fn) {
    try {
        fn();
        return IPP_OK;
    } catch (const ipp::Error& e) {
        return fail(static_cast<ipp_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(IPP_ERROR_RESOURCE, std::string(where) + ": out of memory");
    } catch (const std::exception& e) {
        return fail(IPP_ERROR_INTERNAL, std::string(where) + ": " + e.what());
    } catch (...) {
        return fail(IPP_ERROR_INTERNAL, std::string(where) + ": unknown error");
    }
}

#define IPP_REQUIRE(cond, what)                                          \
    do {                                                                 \
        if (!(cond)) return fail(IPP_ERROR_INVALID_ARGUMENT, what);      \
    } while (0)

ipp::GraphOptions graph_options(const ipp_planner_options* options) {
    ipp_planner_options o;
    ipp_planner_options_default(&o);
    if (options) o = *options;
    ipp::GraphOptions g;
    g.heuristic = o.heuristic == IPP_HEURISTIC_PAPER ? ipp::HeuristicMode::paper : ipp::HeuristicMode::admissible;
    g.parallel = o.parallel != 0;
    return g;
}

std::size_t voxel_budget(const ipp_planner_options* options) {
    return options ? static_cast<std::size_t>(options->voxel_budget) : ipp::kDefaultVoxelBudget;
}

std::unique_ptr<ipp_planner> make_planner(const ipp::Scene& scene, const ipp_planner_options* options) {
    auto p = std::make_unique<ipp_planner>();
    p->scene = scene;
    p->plan = ipp::generate_viewpoints(scene);
    auto grid = std::make_shared<const ipp::VoxelGrid>(ipp::build_grid(scene, voxel_budget(options)));
    p->graph.graph = ipp::build_graph(p->plan, std::move(grid), scene.axis_weights, graph_options(options));
    return p;
}

ipp::SwarmConfig to_cpp(const ipp_swarm_config* c) {
    ipp::SwarmConfig cfg;
    if (!c) return cfg;
    cfg.swarm_size = c->swarm_size;
    cfg.w = c->w;
    cfg.phi1 = c->phi1;
    cfg.phi2 = c->phi2;
    cfg.max_generations = c->max_generations;
    cfg.stall_generations = c->stall_generations;
    cfg.mutation_period = c->mutation_period;
    cfg.seed_fraction = c->seed_fraction;
    cfg.master_seed = c->master_seed;
    cfg.parallel = c->parallel != 0;
    cfg.mutation = c->mutation != 0;
    cfg.edge_exchange = c->edge_exchange != 0;
    return cfg;
}

ipp::Tour report_tour(const ipp_report* report, int start_node) {
    const ipp::Tour& t = report->report.best_tour;
    return start_node < 0 ? t : ipp::rotate_to_start(t, start_node);
}

std::string instance_id(const char* path) { return std::filesystem::path(path).stem().string(); }

}  // namespace

extern "C" {

const char* ipp_version(void) { return "1.0.0"; }

const char* ipp_last_error(void) { return last_error.c_str(); }

const char* ipp_status_string(ipp_status status) {
    switch (status) {
        case IPP_OK: return "ok";
        case IPP_ERROR_USAGE: return "usage error";
        case IPP_ERROR_VALIDATION: return "validation error";
        case IPP_ERROR_INFEASIBLE: return "infeasible";
        case IPP_ERROR_RESOURCE: return "resource error";
        case IPP_ERROR_PARSE: return "parse error";
        case IPP_ERROR_IO: return "i/o error";
        case IPP_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case IPP_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

size_t ipp_strings_count(const ipp_strings* list) { return list ? list->items.size() : 0; }

const char* ipp_strings_at(const ipp_strings* list, size_t index) {
    return list && index < list->items.size() ? list->items[index].c_str() : nullptr;
}

void ipp_strings_free(ipp_strings* list) { delete list; }

ipp_status ipp_scene_load(const char* path, ipp_scene** out) {
    IPP_REQUIRE(path && out, "ipp_scene_load: null argument");
    return guarded("ipp_scene_load", [&] { *out = new ipp_scene{ipp::load_scene(path)}; });
}

ipp_status ipp_scene_from_string(const char* text, ipp_scene** out) {
    IPP_REQUIRE(text && out, "ipp_scene_from_string: null argument");
    return guarded("ipp_scene_from_string", [&] { *out = new ipp_scene{ipp::scene_from_string(text)}; });
}

ipp_status ipp_scene_check_file(const char* path, ipp_strings** violations) {
    IPP_REQUIRE(path && violations, "ipp_scene_check_file: null argument");
    return guarded("ipp_scene_check_file", [&] {
        ipp::Scene scene = ipp::parse_scene(ipp::read_text_file(path));
        ipp::renormalize_axes(scene);
        *violations = new ipp_strings{ipp::validate_scene(scene)};
    });
}

ipp_status ipp_scene_write(const ipp_scene* scene, const char* path) {
    IPP_REQUIRE(scene && path, "ipp_scene_write: null argument");
    return guarded("ipp_scene_write", [&] { ipp::write_text_file(path, ipp::scene_to_string(scene->scene)); });
}

size_t ipp_scene_surface_count(const ipp_scene* scene) { return scene ? scene->scene.surfaces.size() : 0; }
size_t ipp_scene_obstacle_count(const ipp_scene* scene) { return scene ? scene->scene.obstacles.size() : 0; }
void ipp_scene_free(ipp_scene* scene) { delete scene; }

void ipp_planner_options_default(ipp_planner_options* options) {
    if (!options) return;
    options->heuristic = IPP_HEURISTIC_ADMISSIBLE;
    options->parallel = 1;
    options->voxel_budget = ipp::kDefaultVoxelBudget;
}

ipp_status ipp_planner_create(const ipp_scene* scene, const ipp_planner_options* options, ipp_planner** out) {
    IPP_REQUIRE(scene && out, "ipp_planner_create: null argument");
    return guarded("ipp_planner_create", [&] { *out = make_planner(scene->scene, options).release(); });
}

void ipp_planner_free(ipp_planner* planner) { delete planner; }

size_t ipp_planner_viewpoint_count(const ipp_planner* planner) { return planner ? planner->plan.viewpoints.size() : 0; }

ipp_status ipp_planner_viewpoint(const ipp_planner* planner, size_t index, ipp_viewpoint* out) {
    IPP_REQUIRE(planner && out, "ipp_planner_viewpoint: null argument");
    IPP_REQUIRE(index < planner->plan.viewpoints.size(), "ipp_planner_viewpoint: index out of range");
    const auto& vp = planner->plan.viewpoints[index];
    out->id = vp.id;
    for (int a = 0; a < 3; ++a) {
        out->position[a] = vp.position[a];
        out->orientation[a] = vp.orientation[a];
    }
    out->surface_index = vp.surface_index;
    out->cell_row = vp.cell_row;
    out->cell_col = vp.cell_col;
    return IPP_OK;
}

void ipp_planner_coverage_info(const ipp_planner* planner, ipp_coverage_info* out) {
    if (!planner || !out) return;
    out->fov = planner->plan.fov;
    out->primitive = planner->plan.primitive;
    out->working_distance = planner->plan.working_distance;
}

const ipp_graph* ipp_planner_graph(const ipp_planner* planner) { return planner ? &planner->graph : nullptr; }

ipp_status ipp_planner_write_viewpoints(const ipp_planner* planner, const char* path) {
    IPP_REQUIRE(planner && path, "ipp_planner_write_viewpoints: null argument");
    return guarded("ipp_planner_write_viewpoints",
                   [&] { ipp::write_text_file(path, ipp::coverage_plan_to_string(planner->plan)); });
}

ipp_status ipp_planner_write_grid(const ipp_planner* planner, const char* path) {
    IPP_REQUIRE(planner && path, "ipp_planner_write_grid: null argument");
    return guarded("ipp_planner_write_grid",
                   [&] { ipp::write_text_file(path, planner->graph.graph.grid()->dump()); });
}

ipp_status ipp_graph_load_matrix(const char* path, ipp_graph** out) {
    IPP_REQUIRE(path && out, "ipp_graph_load_matrix: null argument");
    return guarded("ipp_graph_load_matrix",
                   [&] { *out = new ipp_graph{ipp::graph_from_matrix_text(ipp::read_text_file(path))}; });
}

ipp_status ipp_graph_from_matrix(size_t n, const double* costs, ipp_graph** out) {
    IPP_REQUIRE(costs && out && n > 0, "ipp_graph_from_matrix: null argument or empty matrix");
    return guarded("ipp_graph_from_matrix", [&] {
        std::vector<double> c(costs, costs + n * n);
        *out = new ipp_graph{ipp::TourGraph::from_costs(static_cast<int>(n), std::move(c))};
    });
}

void ipp_graph_free(ipp_graph* graph) { delete graph; }

size_t ipp_graph_node_count(const ipp_graph* graph) { return graph ? static_cast<size_t>(graph->graph.size()) : 0; }

double ipp_graph_cost(const ipp_graph* graph, size_t i, size_t j) {
    if (!graph || i >= static_cast<size_t>(graph->graph.size()) || j >= static_cast<size_t>(graph->graph.size())) return -1.0;
    return graph->graph.cost(static_cast<int>(i), static_cast<int>(j));
}

int ipp_graph_is_virtual(const ipp_graph* graph, size_t i, size_t j) {
    if (!graph || i >= static_cast<size_t>(graph->graph.size()) || j >= static_cast<size_t>(graph->graph.size())) return 0;
    return graph->graph.is_virtual(static_cast<int>(i), static_cast<int>(j)) ? 1 : 0;
}

ipp_status ipp_graph_write_matrix(const ipp_graph* graph, const char* path) {
    IPP_REQUIRE(graph && path, "ipp_graph_write_matrix: null argument");
    return guarded("ipp_graph_write_matrix", [&] { ipp::write_text_file(path, ipp::graph_to_matrix_text(graph->graph)); });
}

ipp_status ipp_tour_length(const ipp_graph* graph, const int* sequence, size_t length, double* out) {
    IPP_REQUIRE(graph && sequence && out, "ipp_tour_length: null argument");
    return guarded("ipp_tour_length", [&] {
        ipp::Tour t{std::vector<int>(sequence, sequence + length)};
        *out = ipp::tour_length(graph->graph, t);
    });
}

void ipp_swarm_config_default(ipp_swarm_config* config) {
    if (!config) return;
    const ipp::SwarmConfig d;
    config->swarm_size = d.swarm_size;
    config->w = d.w;
    config->phi1 = d.phi1;
    config->phi2 = d.phi2;
    config->max_generations = d.max_generations;
    config->stall_generations = d.stall_generations;
    config->mutation_period = d.mutation_period;
    config->seed_fraction = d.seed_fraction;
    config->master_seed = d.master_seed;
    config->parallel = d.parallel ? 1 : 0;
    config->mutation = d.mutation ? 1 : 0;
    config->edge_exchange = d.edge_exchange ? 1 : 0;
}

ipp_status ipp_solve_graph(const ipp_graph* graph, const ipp_swarm_config* config, ipp_report** out) {
    IPP_REQUIRE(graph && out, "ipp_solve_graph: null argument");
    return guarded("ipp_solve_graph",
                   [&] { *out = new ipp_report{ipp::solve(graph->graph, nullptr, to_cpp(config))}; });
}

ipp_status ipp_planner_solve(const ipp_planner* planner, const ipp_swarm_config* config, ipp_report** out) {
    IPP_REQUIRE(planner && out, "ipp_planner_solve: null argument");
    return guarded("ipp_planner_solve",
                   [&] { *out = new ipp_report{ipp::solve(planner->graph.graph, &planner->plan, to_cpp(config))}; });
}

void ipp_report_free(ipp_report* report) { delete report; }
double ipp_report_best_fitness(const ipp_report* report) { return report ? report->report.best_fitness : 0.0; }
size_t ipp_report_tour_size(const ipp_report* report) { return report ? report->report.best_tour.sequence.size() : 0; }

int ipp_report_tour_node(const ipp_report* report, size_t position) {
    if (!report || position >= report->report.best_tour.sequence.size()) return -1;
    return report->report.best_tour.sequence[position];
}

size_t ipp_report_generations(const ipp_report* report) { return report ? report->report.convergence.size() : 0; }

double ipp_report_convergence(const ipp_report* report, size_t generation_index) {
    if (!report || generation_index >= report->report.convergence.size()) return -1.0;
    return report->report.convergence[generation_index];
}

double ipp_report_wall_time(const ipp_report* report) { return report ? report->report.wall_time : 0.0; }

ipp_status ipp_report_write_convergence(const ipp_report* report, const char* path) {
    IPP_REQUIRE(report && path, "ipp_report_write_convergence: null argument");
    return guarded("ipp_report_write_convergence",
                   [&] { ipp::write_text_file(path, ipp::convergence_to_csv(report->report)); });
}

ipp_status ipp_planner_write_tour(const ipp_planner* planner, const ipp_report* report, int start_node, const char* path) {
    IPP_REQUIRE(planner && report && path, "ipp_planner_write_tour: null argument");
    return guarded("ipp_planner_write_tour", [&] {
        ipp::write_text_file(path, ipp::tour_to_string(planner->plan, planner->graph.graph, report_tour(report, start_node)));
    });
}

ipp_status ipp_planner_write_svg(const ipp_planner* planner, const ipp_report* report, int start_node, int drop_axis,
                                 const char* path) {
    IPP_REQUIRE(planner && report && path, "ipp_planner_write_svg: null argument");
    return guarded("ipp_planner_write_svg", [&] {
        ipp::write_text_file(path, ipp::plan_to_svg(planner->scene, planner->plan, planner->graph.graph,
                                                    report_tour(report, start_node), drop_axis));
    });
}

ipp_status ipp_bench_create(ipp_bench** out) {
    IPP_REQUIRE(out, "ipp_bench_create: null argument");
    return guarded("ipp_bench_create", [&] { *out = new ipp_bench{}; });
}

void ipp_bench_free(ipp_bench* bench) { delete bench; }

ipp_status ipp_bench_add_scene(ipp_bench* bench, const char* path, const ipp_planner_options* options) {
    IPP_REQUIRE(bench && path, "ipp_bench_add_scene: null argument");
    return guarded("ipp_bench_add_scene", [&] {
        auto planner = make_planner(ipp::load_scene(path), options);
        bench->instances.push_back({instance_id(path), std::move(planner->graph.graph), std::move(planner->plan)});
    });
}

ipp_status ipp_bench_add_matrix(ipp_bench* bench, const char* path) {
    IPP_REQUIRE(bench && path, "ipp_bench_add_matrix: null argument");
    return guarded("ipp_bench_add_matrix", [&] {
        bench->instances.push_back({instance_id(path), ipp::graph_from_matrix_text(ipp::read_text_file(path)), std::nullopt});
    });
}

size_t ipp_bench_instance_count(const ipp_bench* bench) { return bench ? bench->instances.size() : 0; }

ipp_status ipp_bench_run(ipp_bench* bench, const ipp_swarm_config* base, int trials, uint64_t first_seed,
                         const char* results_path, const char* summary_path) {
    IPP_REQUIRE(bench && results_path && summary_path, "ipp_bench_run: null argument");
    IPP_REQUIRE(trials >= 1, "ipp_bench_run: trials must be >= 1");
    if (bench->instances.empty()) return fail(IPP_ERROR_USAGE, "ipp_bench_run: no instances");
    return guarded("ipp_bench_run", [&] {
        std::ofstream rows(results_path, std::ios::binary | std::ios::trunc);
        if (!rows) throw ipp::IoError(std::string("cannot open '") + results_path + "' for writing");
        rows << ipp::kBenchResultsHeader << '\n';
        auto results = ipp::run_bench(bench->instances, ipp::all_algorithms(), to_cpp(base), trials, first_seed,
                                      [&](const ipp::BenchResult& r) { rows << ipp::bench_result_row(r) << '\n' << std::flush; });
        ipp::write_text_file(summary_path, ipp::summary_to_csv(ipp::summarize(results)));
    });
}

}  // extern "C"
