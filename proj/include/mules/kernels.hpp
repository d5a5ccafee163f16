#pragma once

// Data-parallel inner loops shared by the facility-location code.
//
// Every kernel has an OpenMP version (used by the library) and a plain
// `_serial` reference kept for tests and benchmarks. Each output element is
// computed by exactly one thread with the same arithmetic as the serial loop,
// so both versions are bit-identical regardless of thread count.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "mules/geometry.hpp"

namespace mules::kernels {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Row-major dense matrix of pairwise distances.
struct DistanceMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

DistanceMatrix distance_matrix(std::span<const Point> from, std::span<const Point> to);
DistanceMatrix distance_matrix_serial(std::span<const Point> from, std::span<const Point> to);

/// Per point, index of the nearest center (lowest index on ties).
std::vector<std::size_t> nearest_indices(std::span<const Point> points, std::span<const Point> centers);
std::vector<std::size_t> nearest_indices_serial(std::span<const Point> points,
                                                std::span<const Point> centers);

/// Per point, distance to the nearest center.
std::vector<double> nearest_distances(std::span<const Point> points, std::span<const Point> centers);
std::vector<double> nearest_distances_serial(std::span<const Point> points,
                                             std::span<const Point> centers);

/// Closest and second-closest open column of a distance-matrix row, ordered
/// by (distance, column). `second` is npos when fewer than two columns are open.
struct NearestPair {
  std::size_t first = npos;
  std::size_t second = npos;
};

/// Recomputes `out[r]` for every r in `rows`, considering only columns with
/// open[c] != 0.
void nearest_two(const DistanceMatrix& d, std::span<const char> open, std::span<const std::size_t> rows,
                 std::span<NearestPair> out);
void nearest_two_serial(const DistanceMatrix& d, std::span<const char> open,
                        std::span<const std::size_t> rows, std::span<NearestPair> out);

}  // namespace mules::kernels
