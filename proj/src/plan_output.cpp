#include "ipp/plan_output.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "ipp/errors.hpp"

namespace ipp {

using nlohmann::json;

Tour rotate_to_start(const Tour& tour, int start_node) {
    const int n = tour.node_count();
    const auto& s = tour.sequence;
    auto it = std::find(s.begin(), s.begin() + n, start_node);
    if (n == 0 || it == s.begin() + n) throw InvalidArgument("start node " + std::to_string(start_node) + " is not in the tour");
    const auto offset = static_cast<std::size_t>(it - s.begin());
    Tour out;
    out.sequence.resize(s.size());
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) out.sequence[k] = s[(offset + k) % n];
    out.sequence.back() = out.sequence.front();
    return out;
}

std::string convergence_to_csv(const SolveReport& report) {
    std::string out = "generation,best_fitness\n";
    for (std::size_t g = 0; g < report.convergence.size(); ++g)
        out += std::to_string(g + 1) + "," + format_number(report.convergence[g]) + "\n";
    return out;
}

namespace {
json point_json(const Vec3& p) { return json::array({p.x(), p.y(), p.z()}); }
}  // namespace

std::string tour_to_string(const CoveragePlan& plan, const TourGraph& graph, const Tour& tour) {
    validate_tour(tour, graph.size());
    json doc;
    doc["n_viewpoints"] = graph.size();
    doc["total_cost"] = tour_length(graph, tour);
    doc["virtual_edges"] = virtual_edge_count(graph, tour);
    doc["sequence"] = tour.sequence;

    doc["viewpoints"] = json::array();
    for (int k = 0; k < tour.node_count(); ++k) {
        const auto& vp = plan.viewpoints.at(tour.sequence[k]);
        doc["viewpoints"].push_back({{"id", vp.id},
                                     {"position", point_json(vp.position)},
                                     {"orientation", point_json(vp.orientation)},
                                     {"surface_index", vp.surface_index}});
    }

    doc["legs"] = json::array();
    for (int k = 0; k < tour.node_count() && graph.size() > 1; ++k) {
        const int from = tour.sequence[k], to = tour.sequence[k + 1];
        json leg{{"from", from}, {"to", to}, {"cost", graph.cost(from, to)}, {"virtual", graph.is_virtual(from, to)}};
        json waypoints = json::array();
        if (auto path = graph.leg(from, to); path && graph.grid()) {
            for (const auto& v : path->waypoints) waypoints.push_back(point_json(graph.grid()->center(v)));
        }
        leg["waypoints"] = std::move(waypoints);
        doc["legs"].push_back(std::move(leg));
    }
    return doc.dump(2) + "\n";
}

Tour tour_from_string(const std::string& text) {
    try {
        const json doc = json::parse(text);
        Tour t;
        t.sequence = doc.at("sequence").get<std::vector<int>>();
        return t;
    } catch (const json::exception& e) {
        throw ParseError(std::string("tour document: ") + e.what());
    }
}

namespace {

class SvgCanvas {
public:
    SvgCanvas(double min_a, double min_b, double max_a, double max_b) : min_a_(min_a), max_b_(max_b) {
        const double span = std::max({max_a - min_a, max_b - min_b, 1e-9});
        scale_ = 760.0 / span;
        width_ = (max_a - min_a) * scale_ + 40.0;
        height_ = (max_b - min_b) * scale_ + 40.0;
    }
    double x(double a) const { return 20.0 + (a - min_a_) * scale_; }
    double y(double b) const { return 20.0 + (max_b_ - b) * scale_; }
    double width() const { return width_; }
    double height() const { return height_; }

private:
    double min_a_, max_b_, scale_{1.0}, width_{0.0}, height_{0.0};
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string plan_to_svg(const Scene& scene, const CoveragePlan& plan, const TourGraph& graph, const Tour& tour,
                        int drop_axis) {
    if (drop_axis < 0 || drop_axis > 2) throw InvalidArgument("drop axis must be 0, 1 or 2");
    const int ia = drop_axis == 0 ? 1 : 0;
    const int ib = drop_axis == 2 ? 1 : 2;
    const SvgCanvas cv(scene.workspace_min[ia], scene.workspace_min[ib], scene.workspace_max[ia], scene.workspace_max[ib]);
    auto px = [&](const Vec3& p) { return num(cv.x(p[ia])) + "," + num(cv.y(p[ib])); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(cv.width()) + "\" height=\"" + num(cv.height()) +
           "\">\n";
    out += "<rect x=\"" + num(cv.x(scene.workspace_min[ia])) + "\" y=\"" + num(cv.y(scene.workspace_max[ib])) +
           "\" width=\"" + num(cv.x(scene.workspace_max[ia]) - cv.x(scene.workspace_min[ia])) + "\" height=\"" +
           num(cv.y(scene.workspace_min[ib]) - cv.y(scene.workspace_max[ib])) +
           "\" fill=\"none\" stroke=\"#999\"/>\n";
    for (const auto& o : scene.obstacles) {
        out += "<rect x=\"" + num(cv.x(o.min_corner[ia])) + "\" y=\"" + num(cv.y(o.max_corner[ib])) + "\" width=\"" +
               num(cv.x(o.max_corner[ia]) - cv.x(o.min_corner[ia])) + "\" height=\"" +
               num(cv.y(o.min_corner[ib]) - cv.y(o.max_corner[ib])) + "\" fill=\"#bbb\" fill-opacity=\"0.6\"/>\n";
    }
    for (const auto& s : scene.surfaces) {
        out += "<polygon points=\"";
        for (const auto& c : s.corners()) out += px(c) + " ";
        out += "\" fill=\"#9cf\" fill-opacity=\"0.4\" stroke=\"#36c\"/>\n";
    }
    for (int k = 0; k < tour.node_count() && graph.size() > 1; ++k) {
        const int from = tour.sequence[k], to = tour.sequence[k + 1];
        auto path = graph.leg(from, to);
        if (path && graph.grid()) {
            out += "<polyline points=\"";
            for (const auto& v : path->waypoints) out += px(graph.grid()->center(v)) + " ";
            out += "\" fill=\"none\" stroke=\"#d22\" stroke-width=\"1.5\"/>\n";
        } else {
            out += "<line x1=\"" + num(cv.x(plan.viewpoints[from].position[ia])) + "\" y1=\"" +
                   num(cv.y(plan.viewpoints[from].position[ib])) + "\" x2=\"" +
                   num(cv.x(plan.viewpoints[to].position[ia])) + "\" y2=\"" + num(cv.y(plan.viewpoints[to].position[ib])) +
                   "\" stroke=\"#d22\" stroke-dasharray=\"4 3\"/>\n";
        }
    }
    for (const auto& vp : plan.viewpoints) {
        out += "<circle cx=\"" + num(cv.x(vp.position[ia])) + "\" cy=\"" + num(cv.y(vp.position[ib])) +
               "\" r=\"2.5\" fill=\"#222\"/>\n";
    }
    if (tour.node_count() > 0) {
        const auto& start = plan.viewpoints[tour.sequence.front()].position;
        out += "<circle cx=\"" + num(cv.x(start[ia])) + "\" cy=\"" + num(cv.y(start[ib])) +
               "\" r=\"5\" fill=\"none\" stroke=\"#0a0\" stroke-width=\"2\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace ipp
