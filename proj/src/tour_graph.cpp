#include "ipp/tour_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ipp/errors.hpp"
#include "parallel.hpp"

namespace ipp {

Tour identity_tour(int n) {
    Tour t;
    if (n <= 0) return t;
    t.sequence.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) t.sequence[i] = i;
    t.sequence[n] = 0;
    return t;
}

std::optional<std::string> tour_violation(const Tour& tour, int n) {
    const auto& s = tour.sequence;
    if (static_cast<int>(s.size()) != n + 1)
        return "tour must list " + std::to_string(n + 1) + " entries, got " + std::to_string(s.size());
    if (n == 0) return std::nullopt;
    if (s.front() != s.back()) return std::string("open loop: first and last entries differ");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
        if (s[k] < 0 || s[k] >= n) return "unknown node " + std::to_string(s[k]);
        if (seen[s[k]]) return "node " + std::to_string(s[k]) + " repeated";
        seen[s[k]] = 1;
    }
    return std::nullopt;  // n distinct ids in [0, n) cover every node
}

void validate_tour(const Tour& tour, int n) {
    if (auto why = tour_violation(tour, n)) throw InvalidArgument("invalid tour: " + *why);
}

double virtual_cost_for(int n, double max_finite_cost) {
    return 1e3 * std::max(1, n) * (max_finite_cost > 0 ? max_finite_cost : 1.0);
}

TourGraph TourGraph::from_costs(int n, std::vector<double> costs, std::vector<std::uint8_t> blocked) {
    if (n < 1) throw InvalidArgument("graph needs at least one node");
    const auto nn = static_cast<std::size_t>(n) * n;
    if (costs.size() != nn) throw InvalidArgument("cost matrix must have n*n entries");
    if (blocked.empty()) blocked.assign(nn, 0);
    if (blocked.size() != nn) throw InvalidArgument("blocked mask must have n*n entries");

    TourGraph g;
    g.n_ = n;
    double max_finite = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto ij = static_cast<std::size_t>(i) * n + j;
            const auto ji = static_cast<std::size_t>(j) * n + i;
            if (blocked[ij] != blocked[ji]) throw InvalidArgument("blocked mask must be symmetric");
            if (i == j) {
                if (blocked[ij]) throw InvalidArgument("a node cannot be blocked from itself");
                if (costs[ij] != 0.0) throw InvalidArgument("cost matrix diagonal must be zero");
                continue;
            }
            if (blocked[ij]) continue;
            const double a = costs[ij], b = costs[ji];
            if (!std::isfinite(a) || a < 0) throw InvalidArgument("edge costs must be finite and non-negative");
            if (std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}))
                throw InvalidArgument("cost matrix must be symmetric");
            max_finite = std::max(max_finite, a);
        }
    }
    g.max_finite_ = max_finite;
    g.virtual_cost_ = virtual_cost_for(n, max_finite);
    g.cost_ = std::move(costs);
    g.virtual_ = std::move(blocked);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto ij = static_cast<std::size_t>(i) * n + j;
            const auto ji = static_cast<std::size_t>(j) * n + i;
            if (g.virtual_[ij]) {
                g.cost_[ij] = g.cost_[ji] = g.virtual_cost_;
            } else {
                g.cost_[ji] = g.cost_[ij];
            }
        }
    return g;
}

bool TourGraph::has_virtual_edges() const {
    return std::any_of(virtual_.begin(), virtual_.end(), [](std::uint8_t v) { return v != 0; });
}

std::optional<VoxelPath> TourGraph::leg(int i, int j) const {
    if (!grid_ || i == j || is_virtual(i, j)) return std::nullopt;
    const int a = std::min(i, j), b = std::max(i, j);
    std::optional<VoxelPath> path;
    if (!legs_.empty()) {
        path = legs_[static_cast<std::size_t>(a) * n_ + b];
    } else {
        path = shortest_path(*grid_, endpoints_[a], endpoints_[b], weights_, heuristic_);
    }
    if (path && i > j) std::reverse(path->waypoints.begin(), path->waypoints.end());
    return path;
}

TourGraph build_graph(const CoveragePlan& plan, std::shared_ptr<const VoxelGrid> grid, const AxisWeights& weights,
                      const GraphOptions& options) {
    if (!grid) throw InvalidArgument("build_graph needs a voxel grid");
    const int n = static_cast<int>(plan.viewpoints.size());
    if (n < 1) throw InvalidArgument("coverage plan has no viewpoints");

    std::vector<Voxel> endpoints;
    endpoints.reserve(n);
    for (const auto& vp : plan.viewpoints) {
        auto v = grid->locate(vp.position);
        if (!v) throw InfeasibleError("viewpoint " + std::to_string(vp.id) + " lies outside the voxel grid");
        if (grid->occupied(*v))
            throw InfeasibleError("viewpoint " + std::to_string(vp.id) + " lies in occupied (inflated) voxel space");
        endpoints.push_back(*v);
    }

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    const bool keep_legs = n <= options.eager_leg_limit;
    const auto nn = static_cast<std::size_t>(n) * n;
    std::vector<double> costs(nn, 0.0);
    std::vector<std::uint8_t> blocked(nn, 0);
    std::vector<std::optional<VoxelPath>> legs(keep_legs ? nn : 0);

    detail::parallel_for(pairs.size(), options.parallel, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const auto ij = static_cast<std::size_t>(i) * n + j;
        const auto ji = static_cast<std::size_t>(j) * n + i;
        auto path = shortest_path(*grid, endpoints[i], endpoints[j], weights, options.heuristic);
        if (!path) {
            blocked[ij] = blocked[ji] = 1;
            return;
        }
        costs[ij] = costs[ji] = path->motion_cost;
        if (keep_legs) legs[ij] = std::move(path);
    });

    TourGraph g = TourGraph::from_costs(n, std::move(costs), std::move(blocked));
    g.grid_ = std::move(grid);
    g.endpoints_ = std::move(endpoints);
    g.weights_ = weights;
    g.heuristic_ = options.heuristic;
    g.legs_ = std::move(legs);
    return g;
}

double tour_length_unchecked(const TourGraph& graph, std::span<const int> sequence) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < sequence.size(); ++k) total += graph.cost(sequence[k], sequence[k + 1]);
    return total;
}

double tour_length(const TourGraph& graph, const Tour& tour) {
    validate_tour(tour, graph.size());
    return tour_length_unchecked(graph, tour.sequence);
}

int virtual_edge_count(const TourGraph& graph, const Tour& tour) {
    int count = 0;
    for (std::size_t k = 0; k + 1 < tour.sequence.size(); ++k)
        count += graph.is_virtual(tour.sequence[k], tour.sequence[k + 1]) ? 1 : 0;
    return count;
}

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) return std::to_string(value);
    return std::string(buf, end);
}

std::string graph_to_matrix_text(const TourGraph& graph) {
    std::string out = std::to_string(graph.size()) + "\n";
    for (int i = 0; i < graph.size(); ++i) {
        for (int j = 0; j < graph.size(); ++j) {
            if (j) out += ' ';
            out += format_number(graph.cost(i, j));
        }
        out += '\n';
    }
    return out;
}

TourGraph graph_from_matrix_text(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    auto next_number = [&](const char* what) {
        if (!(in >> token)) throw ParseError(std::string("cost matrix: missing ") + what);
        double value = 0.0;
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || end != token.data() + token.size())
            throw ParseError("cost matrix: '" + token + "' is not a number");
        return value;
    };
    const double header = next_number("node count");
    if (header < 1 || header != std::floor(header) || header > 1e5)
        throw ParseError("cost matrix: node count must be a positive integer");
    const int n = static_cast<int>(header);
    std::vector<double> costs(static_cast<std::size_t>(n) * n);
    for (auto& c : costs) c = next_number("matrix entry");
    if (in >> token) throw ParseError("cost matrix: trailing data '" + token + "'");
    try {
        return TourGraph::from_costs(n, std::move(costs));
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("cost matrix: ") + e.what());
    }
}

}  // namespace ipp
