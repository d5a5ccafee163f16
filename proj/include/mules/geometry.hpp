#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mules {

/// Position in the plane. Node, mule and area coordinates all use this type.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

/// Arithmetic mean of the coordinates. Throws std::invalid_argument on an
/// empty range (a degenerate cell; callers pick their own fallback).
Point centroid(std::span<const Point> points);

/// Index of the center closest to `p`; exact comparison, lowest index wins ties.
std::size_t nearest_center_index(const Point& p, std::span<const Point> centers);

/// Voronoi-cell membership: element c lists, in ascending order, the indices
/// of the points whose nearest center is c.
std::vector<std::vector<std::size_t>> partition_by_nearest(std::span<const Point> points,
                                                           std::span<const Point> centers);

}  // namespace mules
