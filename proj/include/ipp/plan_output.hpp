#ifndef IPP_PLAN_OUTPUT_HPP_
#define IPP_PLAN_OUTPUT_HPP_

#include <string>

#include "ipp/dpso.hpp"
#include "ipp/scene.hpp"
#include "ipp/tour_graph.hpp"
#include "ipp/viewpoints.hpp"

namespace ipp {

// Same cyclic tour, rotated so that it starts (and ends) at start_node.
Tour rotate_to_start(const Tour& tour, int start_node);

// "generation,best_fitness" rows, generations counted from 1.
std::string convergence_to_csv(const SolveReport& report);

// Tour document: sequence, ordered viewpoints and one leg per edge with its voxel-center polyline (m).
std::string tour_to_string(const CoveragePlan& plan, const TourGraph& graph, const Tour& tour);
// Reads back the "sequence" of a tour document.
Tour tour_from_string(const std::string& text);

// Orthographic projection dropping `drop_axis` (0 = x, 1 = y, 2 = z) as an SVG document.
std::string plan_to_svg(const Scene& scene, const CoveragePlan& plan, const TourGraph& graph, const Tour& tour,
                        int drop_axis);

}  // namespace ipp

#endif  // IPP_PLAN_OUTPUT_HPP_
