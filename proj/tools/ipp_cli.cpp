#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ipp/ipp.h"

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 ok, 1 usage, 2 validation, 3 infeasible, 4 resource.
int exit_code(ipp_status s) {
    switch (s) {
        case IPP_OK: return 0;
        case IPP_ERROR_USAGE:
        case IPP_ERROR_INVALID_ARGUMENT: return 1;
        case IPP_ERROR_INFEASIBLE: return 3;
        case IPP_ERROR_RESOURCE: return 4;
        default: return 2;
    }
}

int fail(ipp_status s, const std::string& context) {
    std::fprintf(stderr, "ipp: %s: %s (%s)\n", context.c_str(), ipp_last_error(), ipp_status_string(s));
    return exit_code(s);
}

struct SolverFlags {
    ipp_swarm_config cfg{};
    bool no_init_seed = false;
    bool no_mutation = false;
    bool no_edge_exchange = false;
    bool serial = false;
    std::string heuristic = "admissible";

    SolverFlags() { ipp_swarm_config_default(&cfg); }

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", cfg.master_seed, "Master random seed");
        cmd->add_option("--particles", cfg.swarm_size, "Swarm size")->check(CLI::PositiveNumber);
        cmd->add_option("--generations", cfg.max_generations, "Maximum generations")->check(CLI::PositiveNumber);
        cmd->add_option("--stall", cfg.stall_generations, "Stop after this many generations without improvement")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--mutation-period", cfg.mutation_period, "Generations between random mutations")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed-fraction", cfg.seed_fraction, "Share of particles started from the sweep tour")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_flag("--no-init-seed", no_init_seed, "Start every particle from a random tour");
        cmd->add_flag("--no-mutation", no_mutation, "Disable random mutation");
        cmd->add_flag("--no-edge-exchange", no_edge_exchange, "Disable 2-opt edge exchange");
        cmd->add_flag("--serial", serial, "Run particle updates and leg searches on one thread");
        cmd->add_option("--heuristic", heuristic, "A* heuristic")
            ->check(CLI::IsMember({"admissible", "paper"}))
            ->capture_default_str();
    }

    ipp_swarm_config config() const {
        ipp_swarm_config c = cfg;
        if (no_init_seed) c.seed_fraction = 0.0;
        if (no_mutation) c.mutation = 0;
        if (no_edge_exchange) c.edge_exchange = 0;
        if (serial) c.parallel = 0;
        return c;
    }

    ipp_planner_options planner_options() const {
        ipp_planner_options o;
        ipp_planner_options_default(&o);
        o.heuristic = heuristic == "paper" ? IPP_HEURISTIC_PAPER : IPP_HEURISTIC_ADMISSIBLE;
        o.parallel = serial ? 0 : 1;
        return o;
    }
};

bool ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::fprintf(stderr, "ipp: cannot create output directory '%s': %s\n", dir.string().c_str(),
                     ec.message().c_str());
        return false;
    }
    return true;
}

struct PlanArgs {
    std::string scene;
    std::string out = ".";
    int start_node = -1;
    bool plot = false;
    std::string drop_axis = "z";
};

int run_plan(const PlanArgs& a, const SolverFlags& flags) {
    if (!ensure_dir(a.out)) return 2;
    const fs::path out(a.out);

    ipp_scene* scene = nullptr;
    if (auto s = ipp_scene_load(a.scene.c_str(), &scene); s != IPP_OK) return fail(s, a.scene);
    const ipp_planner_options opts = flags.planner_options();
    ipp_planner* planner = nullptr;
    auto s = ipp_planner_create(scene, &opts, &planner);
    ipp_scene_free(scene);
    if (s != IPP_OK) return fail(s, "planning");

    const ipp_swarm_config cfg = flags.config();
    ipp_report* report = nullptr;
    int rc = 0;
    if (s = ipp_planner_solve(planner, &cfg, &report); s != IPP_OK) {
        rc = fail(s, "solver");
    } else if (s = ipp_planner_write_viewpoints(planner, (out / "viewpoints.json").string().c_str()); s != IPP_OK) {
        rc = fail(s, "viewpoints");
    } else if (s = ipp_planner_write_tour(planner, report, a.start_node, (out / "tour.json").string().c_str());
               s != IPP_OK) {
        rc = fail(s, "tour");
    } else if (s = ipp_report_write_convergence(report, (out / "convergence.csv").string().c_str()); s != IPP_OK) {
        rc = fail(s, "convergence");
    } else if (a.plot) {
        const int axis = a.drop_axis == "x" ? 0 : a.drop_axis == "y" ? 1 : 2;
        if (s = ipp_planner_write_svg(planner, report, a.start_node, axis, (out / "plan.svg").string().c_str());
            s != IPP_OK)
            rc = fail(s, "plot");
    }
    if (rc == 0) {
        std::printf("viewpoints %zu\ncost %.6f\ngenerations %zu\ntime_s %.3f\n", ipp_planner_viewpoint_count(planner),
                    ipp_report_best_fitness(report), ipp_report_generations(report), ipp_report_wall_time(report));
    }
    ipp_report_free(report);
    ipp_planner_free(planner);
    return rc;
}

struct BenchArgs {
    std::vector<std::string> scenes;
    std::vector<std::string> matrices;
    std::string out = ".";
    int trials = 15;
};

int run_bench(const BenchArgs& a, const SolverFlags& flags, const std::string& usage) {
    if (a.scenes.empty() && a.matrices.empty()) {
        std::fprintf(stderr, "ipp bench: no instances given\n%s", usage.c_str());
        return 1;
    }
    if (!ensure_dir(a.out)) return 2;
    const fs::path out(a.out);

    ipp_bench* bench = nullptr;
    if (auto s = ipp_bench_create(&bench); s != IPP_OK) return fail(s, "bench");
    const ipp_planner_options opts = flags.planner_options();
    int rc = 0;
    for (const auto& p : a.scenes) {
        if (auto s = ipp_bench_add_scene(bench, p.c_str(), &opts); s != IPP_OK) {
            rc = fail(s, p);
            break;
        }
    }
    for (const auto& p : a.matrices) {
        if (rc != 0) break;
        if (auto s = ipp_bench_add_matrix(bench, p.c_str()); s != IPP_OK) rc = fail(s, p);
    }
    if (rc == 0) {
        const ipp_swarm_config cfg = flags.config();
        const auto results = (out / "bench_results.csv").string();
        const auto summary = (out / "bench_summary.csv").string();
        if (auto s = ipp_bench_run(bench, &cfg, a.trials, cfg.master_seed, results.c_str(), summary.c_str());
            s != IPP_OK) {
            rc = fail(s, "bench");
        } else {
            std::printf("results %s\nsummary %s\n", results.c_str(), summary.c_str());
        }
    }
    ipp_bench_free(bench);
    return rc;
}

int run_validate(const std::string& path) {
    ipp_strings* violations = nullptr;
    if (auto s = ipp_scene_check_file(path.c_str(), &violations); s != IPP_OK) return fail(s, path);
    const size_t n = ipp_strings_count(violations);
    for (size_t i = 0; i < n; ++i) std::fprintf(stderr, "%s: %s\n", path.c_str(), ipp_strings_at(violations, i));
    ipp_strings_free(violations);
    if (n > 0) return 2;
    std::printf("%s: ok\n", path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inspection path planner"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ipp_version());

    SolverFlags plan_flags, bench_flags;

    PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "Plan an inspection tour for a scene");
    plan->add_option("--scene", plan_args.scene, "Scene file")->required();
    plan->add_option("--out", plan_args.out, "Output directory")->capture_default_str();
    plan->add_option("--start-node", plan_args.start_node, "Rotate the tour to start at this viewpoint id")
        ->check(CLI::NonNegativeNumber);
    plan->add_flag("--plot", plan_args.plot, "Also write plan.svg");
    plan->add_option("--drop-axis", plan_args.drop_axis, "Axis removed by the plot projection")
        ->check(CLI::IsMember({"x", "y", "z"}))
        ->capture_default_str();
    plan_flags.attach(plan);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Compare solver variants over seeds");
    bench->add_option("--scene", bench_args.scenes, "Scene files")->take_all();
    bench->add_option("--matrix", bench_args.matrices, "Cost matrix files")->take_all();
    bench->add_option("--out", bench_args.out, "Output directory")->capture_default_str();
    bench->add_option("--trials", bench_args.trials, "Seeds per instance and algorithm")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_flags.attach(bench);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a scene file");
    validate->add_option("--scene", validate_path, "Scene file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (*plan) return run_plan(plan_args, plan_flags);
    if (*bench) return run_bench(bench_args, bench_flags, bench->help());
    return run_validate(validate_path);
}
