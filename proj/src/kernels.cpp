#include "mules/kernels.hpp"

#include <cstdint>

namespace mules::kernels {
namespace {

// Below this many distance evaluations a parallel region costs more than it saves.
constexpr std::size_t kParallelWork = 1 << 14;

NearestPair scan_row(const DistanceMatrix& d, std::span<const char> open, std::size_t r) {
  NearestPair np;
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = d1;
  for (std::size_t c = 0; c < d.cols; ++c) {
    if (!open[c]) continue;
    const double v = d(r, c);
    if (np.first == npos || v < d1) {
      np.second = np.first;
      d2 = d1;
      np.first = c;
      d1 = v;
    } else if (np.second == npos || v < d2) {
      np.second = c;
      d2 = v;
    }
  }
  return np;
}

std::size_t argmin_center(const Point& p, std::span<const Point> centers, double& best_d) {
  std::size_t best = 0;
  best_d = distance(p, centers[0]);
  for (std::size_t c = 1; c < centers.size(); ++c) {
    const double dist = distance(p, centers[c]);
    if (dist < best_d) {
      best_d = dist;
      best = c;
    }
  }
  return best;
}

}  // namespace

DistanceMatrix distance_matrix(std::span<const Point> from, std::span<const Point> to) {
  DistanceMatrix m{from.size(), to.size(), std::vector<double>(from.size() * to.size())};
  const auto rows = static_cast<std::int64_t>(m.rows);
#pragma omp parallel for schedule(static) if (m.values.size() >= kParallelWork)
  for (std::int64_t r = 0; r < rows; ++r) {
    double* row = m.values.data() + static_cast<std::size_t>(r) * m.cols;
    for (std::size_t c = 0; c < m.cols; ++c) row[c] = distance(from[r], to[c]);
  }
  return m;
}

DistanceMatrix distance_matrix_serial(std::span<const Point> from, std::span<const Point> to) {
  DistanceMatrix m{from.size(), to.size(), {}};
  m.values.reserve(from.size() * to.size());
  for (const Point& a : from)
    for (const Point& b : to) m.values.push_back(distance(a, b));
  return m;
}

std::vector<std::size_t> nearest_indices(std::span<const Point> points, std::span<const Point> centers) {
  std::vector<std::size_t> out(points.size(), npos);
  if (centers.empty()) return out;
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static) if (points.size() * centers.size() >= kParallelWork)
  for (std::int64_t i = 0; i < n; ++i) {
    double unused = 0.0;
    out[i] = argmin_center(points[i], centers, unused);
  }
  return out;
}

std::vector<std::size_t> nearest_indices_serial(std::span<const Point> points,
                                                std::span<const Point> centers) {
  std::vector<std::size_t> out;
  out.reserve(points.size());
  for (const Point& p : points) {
    std::size_t best = npos;
    double best_d = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double d = distance(p, centers[c]);
      if (best == npos || d < best_d) {
        best = c;
        best_d = d;
      }
    }
    out.push_back(best);
  }
  return out;
}

std::vector<double> nearest_distances(std::span<const Point> points, std::span<const Point> centers) {
  std::vector<double> out(points.size(), std::numeric_limits<double>::infinity());
  if (centers.empty()) return out;
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static) if (points.size() * centers.size() >= kParallelWork)
  for (std::int64_t i = 0; i < n; ++i) argmin_center(points[i], centers, out[i]);
  return out;
}

std::vector<double> nearest_distances_serial(std::span<const Point> points,
                                             std::span<const Point> centers) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Point& p : points) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& c : centers) {
      const double d = distance(p, c);
      if (d < best) best = d;
    }
    out.push_back(best);
  }
  return out;
}

void nearest_two(const DistanceMatrix& d, std::span<const char> open, std::span<const std::size_t> rows,
                 std::span<NearestPair> out) {
  const auto n = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(static) if (rows.size() * d.cols >= kParallelWork)
  for (std::int64_t i = 0; i < n; ++i) out[rows[i]] = scan_row(d, open, rows[i]);
}

void nearest_two_serial(const DistanceMatrix& d, std::span<const char> open,
                        std::span<const std::size_t> rows, std::span<NearestPair> out) {
  for (const std::size_t r : rows) {
    NearestPair np;
    for (std::size_t c = 0; c < d.cols; ++c) {
      if (!open[c]) continue;
      if (np.first == npos || d(r, c) < d(r, np.first)) {
        np.second = np.first;
        np.first = c;
      } else if (np.second == npos || d(r, c) < d(r, np.second)) {
        np.second = c;
      }
    }
    out[r] = np;
  }
}

}  // namespace mules::kernels
