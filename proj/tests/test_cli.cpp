#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ipp/scene.hpp"
#include "ipp/voxel_grid.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kData = IPP_TEST_DATA_DIR;

struct Run {
    int code;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "ipp_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Run run(const std::string& args) {
    const fs::path tmp = fs::temp_directory_path() / "ipp_cli_test";
    fs::create_directories(tmp);
    const auto out = tmp / "stdout.txt", err = tmp / "stderr.txt";
    const std::string cmd =
        std::string("\"") + IPP_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string scene(const char* name) { return "\"" + (kData / name).string() + "\""; }

}  // namespace

TEST_CASE("plan on an open wall follows the back-and-forth cost") {
    const auto out = scratch("open");
    Run r = run("plan --scene " + scene("grid23.json") + " --out \"" + out.string() + "\" --plot");
    REQUIRE(r.code == 0);
    const json tour = json::parse(slurp(out / "tour.json"));
    CHECK(tour["n_viewpoints"] == 6);
    CHECK(tour["total_cost"] == 6.0);
    CHECK(tour["virtual_edges"] == 0);
    CHECK(tour["sequence"].size() == 7);
    CHECK(tour["legs"].size() == 6);
    CHECK(tour["viewpoints"].size() == 6);
    CHECK(slurp(out / "convergence.csv").rfind("generation,best_fitness\n", 0) == 0);
    CHECK(fs::exists(out / "viewpoints.json"));
    CHECK(slurp(out / "plan.svg").find("<polyline") != std::string::npos);
}

TEST_CASE("emitted legs avoid inflated obstacles") {
    const auto out = scratch("wall");
    Run r = run("plan --scene " + scene("wall.json") + " --out \"" + out.string() + "\" --seed 3");
    REQUIRE(r.code == 0);
    const ipp::Scene s = ipp::load_scene(kData / "wall.json");
    const ipp::VoxelGrid grid = ipp::build_grid(s);
    const json tour = json::parse(slurp(out / "tour.json"));
    int checked = 0;
    for (const auto& leg : tour["legs"]) {
        CHECK(leg["virtual"] == false);
        for (const auto& w : leg["waypoints"]) {
            const ipp::Vec3 p(w[0].get<double>(), w[1].get<double>(), w[2].get<double>());
            auto v = grid.locate(p);
            REQUIRE(v);
            CHECK_FALSE(grid.occupied(*v));
            ++checked;
        }
    }
    CHECK(checked > 0);
    CHECK(grid.occupied_count() > 0);
}

TEST_CASE("start node rotates the output") {
    const auto out = scratch("start");
    REQUIRE(run("plan --scene " + scene("grid23.json") + " --out \"" + out.string() + "\" --start-node 4").code == 0);
    const json tour = json::parse(slurp(out / "tour.json"));
    CHECK(tour["sequence"].front() == 4);
    CHECK(tour["sequence"].back() == 4);
    CHECK(tour["viewpoints"][0]["id"] == 4);
    CHECK(run("plan --scene " + scene("grid23.json") + " --out \"" + out.string() + "\" --start-node 99").code == 1);
}

TEST_CASE("exit codes") {
    const auto out = scratch("codes");
    const std::string o = " --out \"" + out.string() + "\"";
    Run malformed = run("plan --scene " + scene("malformed.json") + o);
    CHECK(malformed.code == 2);
    CHECK(malformed.err.find("malformed") != std::string::npos);
    CHECK(run("plan --scene " + scene("bad_overlap.json") + o).code == 2);
    CHECK(run("plan --scene " + scene("cramped.json") + o).code == 3);
    CHECK(run("plan --scene " + scene("huge.json") + o).code == 4);
    CHECK(run("plan --scene /nonexistent.json" + o).code == 2);
    CHECK(run("").code == 1);
    CHECK(run("plan").code == 1);
    CHECK(run("plan --scene x --particles -4").code == 1);
    CHECK(run("plan --scene x --heuristic fast").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("--help").code == 0);
}

TEST_CASE("validate") {
    Run ok = run("validate --scene " + scene("grid23.json"));
    CHECK(ok.code == 0);
    CHECK(ok.out.find("ok") != std::string::npos);
    Run bad = run("validate --scene " + scene("bad_overlap.json"));
    CHECK(bad.code == 2);
    CHECK(bad.err.find("overlap must be < 1") != std::string::npos);
    CHECK(run("validate --scene " + scene("malformed.json")).code == 2);
}

TEST_CASE("bench with no instances is a usage error") {
    Run r = run("bench --out \"" + scratch("empty").string() + "\"");
    CHECK(r.code == 1);
    CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("bench writes 15 rows per algorithm and a summary") {
    const auto out = scratch("bench");
    Run r = run("bench --scene " + scene("grid23.json") + " --out \"" + out.string() + "\" --particles 20");
    REQUIRE(r.code == 0);
    std::istringstream rows(slurp(out / "bench_results.csv"));
    std::string line;
    std::getline(rows, line);
    CHECK(line == "algorithm,instance,seed,cost,time_s,iterations");
    std::map<std::string, int> per_algorithm;
    while (std::getline(rows, line)) ++per_algorithm[line.substr(0, line.find(','))];
    CHECK(per_algorithm.size() == 7);
    for (const auto& [name, count] : per_algorithm) CHECK(count == 15);

    std::istringstream summary(slurp(out / "bench_summary.csv"));
    std::getline(summary, line);
    CHECK(line.find("mean_cost,sd_cost") != std::string::npos);
    int summary_rows = 0;
    while (std::getline(summary, line)) ++summary_rows;
    CHECK(summary_rows == 7);
}

TEST_CASE("bench stops on an unreadable instance") {
    const auto out = scratch("partial");
    Run r = run("bench --scene " + scene("grid23.json") + " " + scene("malformed.json") + " --out \"" +
                out.string() + "\"");
    CHECK(r.code == 2);
    CHECK_FALSE(fs::exists(out / "bench_summary.csv"));
}

TEST_CASE("matrix instances") {
    const auto out = scratch("matrix");
    std::ofstream(out / "m.txt") << "3\n0 1 2\n1 0 3\n2 3 0\n";
    Run r = run("bench --matrix \"" + (out / "m.txt").string() + "\" --trials 2 --out \"" + out.string() + "\"");
    REQUIRE(r.code == 0);
    CHECK(slurp(out / "bench_results.csv").find("enhanced,m,1,6,") != std::string::npos);
}

TEST_CASE("repeated plans are byte identical") {
    const auto a = scratch("rep_a"), b = scratch("rep_b");
    const std::string args = "plan --scene " + scene("wall.json") + " --seed 11 --plot --out ";
    REQUIRE(run(args + "\"" + a.string() + "\"").code == 0);
    REQUIRE(run(args + "\"" + b.string() + "\"").code == 0);
    for (const char* f : {"tour.json", "convergence.csv", "viewpoints.json", "plan.svg"})
        CHECK(slurp(a / f) == slurp(b / f));
}
