#pragma once

// Facility-location placement: where to put k mules given n sensor nodes.

#include <cstddef>
#include <span>
#include <vector>

#include "mules/geometry.hpp"

namespace mules {

/// Demand/candidate sites and the number of facilities to open.
struct PlacementProblem {
  std::span<const Point> sites;
  std::size_t k = 0;
};

inline constexpr std::size_t kDefaultCentroidRounds = 100;
inline constexpr double kCentroidTolerance = 1e-9;
inline constexpr double kDefaultLocalSearchStep = 1.0;

/// First k cell centers, row-major, of an r x c grid over [0,W]x[0,H] with
/// r = ceil(sqrt(k)) and c = ceil(k / r).
std::vector<Point> grid_placement(std::size_t k, double area_width, double area_height);

/// Gonzalez farthest-first traversal starting from site 0. Returns the chosen
/// site indices in selection order; ties go to the lowest index.
std::vector<std::size_t> farthest_first_indices(const PlacementProblem& problem);
std::vector<Point> farthest_first(const PlacementProblem& problem);

/// Reverse greedy for discrete k-median: open a facility on every site, then
/// repeatedly close the one whose removal raises the total site-to-nearest
/// distance least (lowest index on ties) until k remain. Indices ascending.
std::vector<std::size_t> reverse_greedy_indices(const PlacementProblem& problem);
/// Same algorithm on the serial kernels; reference for the parallel build.
std::vector<std::size_t> reverse_greedy_indices_serial(const PlacementProblem& problem);
std::vector<Point> reverse_greedy(const PlacementProblem& problem);

/// Lloyd-style repositioning: every mule jumps to the centroid of the nodes
/// it is closest to, repeated until no mule moves more than 1e-9 or
/// `max_rounds` is reached. Mules with empty cells stay put.
std::vector<Point> centroid_adjust(std::span<const Point> mules, std::span<const Point> nodes,
                                   std::size_t max_rounds = kDefaultCentroidRounds);

/// Bounded anytime local search on the k-median objective.
///
/// Each sweep visits mules in index order. A mule compares staying against
/// the eight compass moves of length `step` (N, NE, E, SE, S, SW, W, NW),
/// scoring each by the summed distance to the nodes currently in its cell,
/// and takes the strictly best one. The best deployment seen after any sweep
/// (including the input) is returned. Stops after `max_iterations` sweeps or
/// the first sweep in which nobody moves.
std::vector<Point> local_search(std::span<const Point> mules, std::span<const Point> nodes,
                                std::size_t max_iterations, double step = kDefaultLocalSearchStep);

/// Sum over nodes of the distance to the nearest center.
double kmedian_objective(std::span<const Point> centers, std::span<const Point> nodes);
/// Max over nodes of the distance to the nearest center; 0 with no nodes.
double kcenter_objective(std::span<const Point> centers, std::span<const Point> nodes);

}  // namespace mules
