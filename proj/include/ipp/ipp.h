/*
 * C interface to the inspection path planner.
 *
 * Objects are opaque handles created by *_create / *_load functions and released with the matching
 * *_free function. Every fallible call returns an ipp_status; on failure ipp_last_error() holds a
 * diagnostic for the calling thread until its next failing call.
 */
#ifndef IPP_IPP_H_
#define IPP_IPP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IPP_BUILDING_LIBRARY)
#    define IPP_API __declspec(dllexport)
#  else
#    define IPP_API __declspec(dllimport)
#  endif
#else
#  define IPP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 1-4 double as CLI exit codes. */
typedef enum ipp_status {
    IPP_OK = 0,
    IPP_ERROR_USAGE = 1,
    IPP_ERROR_VALIDATION = 2,
    IPP_ERROR_INFEASIBLE = 3,
    IPP_ERROR_RESOURCE = 4,
    IPP_ERROR_PARSE = 5,
    IPP_ERROR_IO = 6,
    IPP_ERROR_INVALID_ARGUMENT = 7,
    IPP_ERROR_INTERNAL = 8
} ipp_status;

typedef enum ipp_heuristic { IPP_HEURISTIC_ADMISSIBLE = 0, IPP_HEURISTIC_PAPER = 1 } ipp_heuristic;

typedef struct ipp_scene ipp_scene;
typedef struct ipp_planner ipp_planner;
typedef struct ipp_graph ipp_graph;
typedef struct ipp_report ipp_report;
typedef struct ipp_strings ipp_strings;
typedef struct ipp_bench ipp_bench;

typedef struct ipp_planner_options {
    ipp_heuristic heuristic;
    int parallel;          /* build all-pairs legs concurrently */
    uint64_t voxel_budget; /* maximum voxel count, resource error above it */
} ipp_planner_options;

typedef struct ipp_swarm_config {
    int swarm_size;
    double w;
    double phi1;
    double phi2;
    int max_generations;
    int stall_generations;
    int mutation_period;
    double seed_fraction;
    uint64_t master_seed;
    int parallel;
    int mutation;
    int edge_exchange;
} ipp_swarm_config;

typedef struct ipp_viewpoint {
    int id;
    double position[3];
    double orientation[3];
    int surface_index;
    int cell_row;
    int cell_col;
} ipp_viewpoint;

typedef struct ipp_coverage_info {
    double fov;
    double primitive;
    double working_distance;
} ipp_coverage_info;

IPP_API const char* ipp_version(void);
IPP_API const char* ipp_last_error(void);
IPP_API const char* ipp_status_string(ipp_status status);

/* String lists */
IPP_API size_t ipp_strings_count(const ipp_strings* list);
IPP_API const char* ipp_strings_at(const ipp_strings* list, size_t index);
IPP_API void ipp_strings_free(ipp_strings* list);

/* Scenes */
IPP_API ipp_status ipp_scene_load(const char* path, ipp_scene** out);
IPP_API ipp_status ipp_scene_from_string(const char* text, ipp_scene** out);
/* Parses the file and lists every invariant violation (empty list when valid). Parse errors fail the call. */
IPP_API ipp_status ipp_scene_check_file(const char* path, ipp_strings** violations);
IPP_API ipp_status ipp_scene_write(const ipp_scene* scene, const char* path);
IPP_API size_t ipp_scene_surface_count(const ipp_scene* scene);
IPP_API size_t ipp_scene_obstacle_count(const ipp_scene* scene);
IPP_API void ipp_scene_free(ipp_scene* scene);

/* Planner: viewpoints, voxel grid and tour graph of one scene */
IPP_API void ipp_planner_options_default(ipp_planner_options* options);
IPP_API ipp_status ipp_planner_create(const ipp_scene* scene, const ipp_planner_options* options, ipp_planner** out);
IPP_API void ipp_planner_free(ipp_planner* planner);
IPP_API size_t ipp_planner_viewpoint_count(const ipp_planner* planner);
IPP_API ipp_status ipp_planner_viewpoint(const ipp_planner* planner, size_t index, ipp_viewpoint* out);
IPP_API void ipp_planner_coverage_info(const ipp_planner* planner, ipp_coverage_info* out);
/* Borrowed; valid as long as the planner. */
IPP_API const ipp_graph* ipp_planner_graph(const ipp_planner* planner);
IPP_API ipp_status ipp_planner_write_viewpoints(const ipp_planner* planner, const char* path);
IPP_API ipp_status ipp_planner_write_grid(const ipp_planner* planner, const char* path);

/* Graphs */
IPP_API ipp_status ipp_graph_load_matrix(const char* path, ipp_graph** out);
/* costs: n*n row-major, symmetric, zero diagonal. */
IPP_API ipp_status ipp_graph_from_matrix(size_t n, const double* costs, ipp_graph** out);
IPP_API void ipp_graph_free(ipp_graph* graph);
IPP_API size_t ipp_graph_node_count(const ipp_graph* graph);
IPP_API double ipp_graph_cost(const ipp_graph* graph, size_t i, size_t j);
IPP_API int ipp_graph_is_virtual(const ipp_graph* graph, size_t i, size_t j);
IPP_API ipp_status ipp_graph_write_matrix(const ipp_graph* graph, const char* path);
/* sequence: n + 1 node ids, closed. Fails with IPP_ERROR_INVALID_ARGUMENT on an invalid tour. */
IPP_API ipp_status ipp_tour_length(const ipp_graph* graph, const int* sequence, size_t length, double* out);

/* Solver */
IPP_API void ipp_swarm_config_default(ipp_swarm_config* config);
IPP_API ipp_status ipp_solve_graph(const ipp_graph* graph, const ipp_swarm_config* config, ipp_report** out);
/* Uses the planner's viewpoint grids for the back-and-forth seed. */
IPP_API ipp_status ipp_planner_solve(const ipp_planner* planner, const ipp_swarm_config* config, ipp_report** out);
IPP_API void ipp_report_free(ipp_report* report);
IPP_API double ipp_report_best_fitness(const ipp_report* report);
IPP_API size_t ipp_report_tour_size(const ipp_report* report);
IPP_API int ipp_report_tour_node(const ipp_report* report, size_t position);
IPP_API size_t ipp_report_generations(const ipp_report* report);
IPP_API double ipp_report_convergence(const ipp_report* report, size_t generation_index);
IPP_API double ipp_report_wall_time(const ipp_report* report);
IPP_API ipp_status ipp_report_write_convergence(const ipp_report* report, const char* path);
/* start_node < 0 keeps the solver's rotation. */
IPP_API ipp_status ipp_planner_write_tour(const ipp_planner* planner, const ipp_report* report, int start_node,
                                          const char* path);
/* drop_axis: 0 = x, 1 = y, 2 = z */
IPP_API ipp_status ipp_planner_write_svg(const ipp_planner* planner, const ipp_report* report, int start_node,
                                         int drop_axis, const char* path);

/* Benchmark harness */
IPP_API ipp_status ipp_bench_create(ipp_bench** out);
IPP_API void ipp_bench_free(ipp_bench* bench);
IPP_API ipp_status ipp_bench_add_scene(ipp_bench* bench, const char* path, const ipp_planner_options* options);
IPP_API ipp_status ipp_bench_add_matrix(ipp_bench* bench, const char* path);
IPP_API size_t ipp_bench_instance_count(const ipp_bench* bench);
/* Writes one results row per (instance, algorithm, seed) as it finishes, then the summary table. */
IPP_API ipp_status ipp_bench_run(ipp_bench* bench, const ipp_swarm_config* base, int trials, uint64_t first_seed,
                                 const char* results_path, const char* summary_path);

#ifdef __cplusplus
}
#endif

#endif /* IPP_IPP_H_ */
