#include "mules/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "mules/kernels.hpp"

namespace mules {

double distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

Point centroid(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("centroid: empty point set (degenerate cell)");
  double sx = 0.0;
  double sy = 0.0;
  for (const Point& p : points) {
    sx += p.x;
    sy += p.y;
  }
  const auto n = static_cast<double>(points.size());
  return {sx / n, sy / n};
}

std::size_t nearest_center_index(const Point& p, std::span<const Point> centers) {
  if (centers.empty()) throw std::invalid_argument("nearest_center_index: no centers");
  std::size_t best = 0;
  double best_d = distance(p, centers[0]);
  for (std::size_t c = 1; c < centers.size(); ++c) {
    const double d = distance(p, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::vector<std::vector<std::size_t>> partition_by_nearest(std::span<const Point> points,
                                                           std::span<const Point> centers) {
  if (centers.empty()) throw std::invalid_argument("partition_by_nearest: no centers");
  const std::vector<std::size_t> owner = kernels::nearest_indices(points, centers);
  std::vector<std::vector<std::size_t>> cells(centers.size());
  for (std::size_t i = 0; i < owner.size(); ++i) cells[owner[i]].push_back(i);
  return cells;
}

}  // namespace mules
