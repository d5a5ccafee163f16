#include "mules/facility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mules/kernels.hpp"

namespace mules {
namespace {

void check_problem(const PlacementProblem& problem, const char* who) {
  if (problem.k == 0 || problem.k > problem.sites.size())
    throw std::invalid_argument(std::string(who) + ": need 1 <= k <= n (k=" + std::to_string(problem.k) +
                                ", n=" + std::to_string(problem.sites.size()) + ")");
}

template <class MatrixFn, class NearestTwoFn>
std::vector<std::size_t> reverse_greedy_impl(const PlacementProblem& problem, MatrixFn&& make_matrix,
                                             NearestTwoFn&& nearest_two) {
  check_problem(problem, "reverse_greedy");
  const std::size_t n = problem.sites.size();
  const kernels::DistanceMatrix d = make_matrix(problem.sites, problem.sites);

  std::vector<char> open(n, 1);
  std::size_t open_count = n;
  std::vector<kernels::NearestPair> pairs(n);
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  nearest_two(d, open, rows, pairs);

  std::vector<double> delta(n);
  while (open_count > problem.k) {
    // delta[c]: increase of the total cost if facility c closes. Only sites
    // served by c are affected; they fall back to their second choice.
    std::fill(delta.begin(), delta.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = pairs[i];
      delta[p.first] += d(i, p.second) - d(i, p.first);
    }
    std::size_t victim = kernels::npos;
    for (std::size_t c = 0; c < n; ++c) {
      if (open[c] && (victim == kernels::npos || delta[c] < delta[victim])) victim = c;
    }
    open[victim] = 0;
    --open_count;

    rows.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (pairs[i].first == victim || pairs[i].second == victim) rows.push_back(i);
    }
    nearest_two(d, open, rows, pairs);
  }

  std::vector<std::size_t> kept;
  kept.reserve(problem.k);
  for (std::size_t c = 0; c < n; ++c)
    if (open[c]) kept.push_back(c);
  return kept;
}

std::vector<Point> gather(std::span<const Point> sites, const std::vector<std::size_t>& idx) {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (const std::size_t i : idx) out.push_back(sites[i]);
  return out;
}

double cell_cost(std::span<const Point> nodes, const std::vector<std::size_t>& cell, const Point& at) {
  double sum = 0.0;
  for (const std::size_t v : cell) sum += distance(nodes[v], at);
  return sum;
}

}  // namespace

std::vector<Point> grid_placement(std::size_t k, double area_width, double area_height) {
  if (k == 0) throw std::invalid_argument("grid_placement: k must be positive");
  if (!(area_width > 0.0) || !(area_height > 0.0))
    throw std::invalid_argument("grid_placement: area dimensions must be positive");
  std::size_t rows = 1;
  while (rows * rows < k) ++rows;
  const std::size_t cols = (k + rows - 1) / rows;
  const double cw = area_width / static_cast<double>(cols);
  const double ch = area_height / static_cast<double>(rows);

  std::vector<Point> out;
  out.reserve(k);
  for (std::size_t i = 0; i < rows && out.size() < k; ++i)
    for (std::size_t j = 0; j < cols && out.size() < k; ++j)
      out.push_back({(static_cast<double>(j) + 0.5) * cw, (static_cast<double>(i) + 0.5) * ch});
  return out;
}

std::vector<std::size_t> farthest_first_indices(const PlacementProblem& problem) {
  check_problem(problem, "farthest_first");
  const auto sites = problem.sites;
  const std::size_t n = sites.size();

  std::vector<std::size_t> chosen{0};
  std::vector<char> taken(n, 0);
  taken[0] = 1;
  std::vector<double> gap(n);
  for (std::size_t i = 0; i < n; ++i) gap[i] = distance(sites[i], sites[0]);

  while (chosen.size() < problem.k) {
    std::size_t next = kernels::npos;
    for (std::size_t i = 0; i < n; ++i) {
      if (!taken[i] && (next == kernels::npos || gap[i] > gap[next])) next = i;
    }
    chosen.push_back(next);
    taken[next] = 1;
    for (std::size_t i = 0; i < n; ++i) gap[i] = std::min(gap[i], distance(sites[i], sites[next]));
  }
  return chosen;
}

std::vector<Point> farthest_first(const PlacementProblem& problem) {
  return gather(problem.sites, farthest_first_indices(problem));
}

std::vector<std::size_t> reverse_greedy_indices(const PlacementProblem& problem) {
  return reverse_greedy_impl(
      problem, [](std::span<const Point> a, std::span<const Point> b) { return kernels::distance_matrix(a, b); },
      [](const kernels::DistanceMatrix& d, std::span<const char> open, std::span<const std::size_t> rows,
         std::span<kernels::NearestPair> out) { kernels::nearest_two(d, open, rows, out); });
}

std::vector<std::size_t> reverse_greedy_indices_serial(const PlacementProblem& problem) {
  return reverse_greedy_impl(
      problem, [](std::span<const Point> a, std::span<const Point> b) { return kernels::distance_matrix_serial(a, b); },
      [](const kernels::DistanceMatrix& d, std::span<const char> open, std::span<const std::size_t> rows,
         std::span<kernels::NearestPair> out) { kernels::nearest_two_serial(d, open, rows, out); });
}

std::vector<Point> reverse_greedy(const PlacementProblem& problem) {
  return gather(problem.sites, reverse_greedy_indices(problem));
}

std::vector<Point> centroid_adjust(std::span<const Point> mules, std::span<const Point> nodes,
                                   std::size_t max_rounds) {
  if (mules.empty()) throw std::invalid_argument("centroid_adjust: no mules");
  std::vector<Point> pos(mules.begin(), mules.end());
  std::vector<Point> members;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    const auto cells = partition_by_nearest(nodes, pos);
    double max_shift = 0.0;
    for (std::size_t m = 0; m < pos.size(); ++m) {
      if (cells[m].empty()) continue;
      members.clear();
      for (const std::size_t v : cells[m]) members.push_back(nodes[v]);
      const Point c = centroid(members);
      max_shift = std::max(max_shift, distance(c, pos[m]));
      pos[m] = c;
    }
    if (max_shift <= kCentroidTolerance) break;
  }
  return pos;
}

std::vector<Point> local_search(std::span<const Point> mules, std::span<const Point> nodes,
                                std::size_t max_iterations, double step) {
  if (mules.empty()) throw std::invalid_argument("local_search: no mules");
  if (!(step > 0.0)) throw std::invalid_argument("local_search: step must be positive");

  const double diag = step / std::sqrt(2.0);
  // N, NE, E, SE, S, SW, W, NW
  const std::array<Point, 8> offsets{{{0.0, step},
                                      {diag, diag},
                                      {step, 0.0},
                                      {diag, -diag},
                                      {0.0, -step},
                                      {-diag, -diag},
                                      {-step, 0.0},
                                      {-diag, diag}}};

  std::vector<Point> pos(mules.begin(), mules.end());
  std::vector<Point> best = pos;
  double best_obj = nodes.empty() ? 0.0 : kmedian_objective(pos, nodes);
  std::vector<std::size_t> cell;

  for (std::size_t it = 0; it < max_iterations; ++it) {
    bool moved = false;
    for (std::size_t m = 0; m < pos.size(); ++m) {
      cell.clear();
      for (std::size_t v = 0; v < nodes.size(); ++v)
        if (nearest_center_index(nodes[v], pos) == m) cell.push_back(v);
      if (cell.empty()) continue;

      Point target = pos[m];
      double target_cost = cell_cost(nodes, cell, target);
      for (const Point& off : offsets) {
        const Point cand{pos[m].x + off.x, pos[m].y + off.y};
        const double cost = cell_cost(nodes, cell, cand);
        if (cost < target_cost) {
          target_cost = cost;
          target = cand;
        }
      }
      if (!(target == pos[m])) {
        pos[m] = target;
        moved = true;
      }
    }
    if (!nodes.empty()) {
      const double obj = kmedian_objective(pos, nodes);
      if (obj < best_obj) {
        best_obj = obj;
        best = pos;
      }
    }
    if (!moved) break;
  }
  return best;
}

double kmedian_objective(std::span<const Point> centers, std::span<const Point> nodes) {
  if (centers.empty()) throw std::invalid_argument("kmedian_objective: no centers");
  double sum = 0.0;
  for (const double d : kernels::nearest_distances(nodes, centers)) sum += d;
  return sum;
}

double kcenter_objective(std::span<const Point> centers, std::span<const Point> nodes) {
  if (centers.empty()) throw std::invalid_argument("kcenter_objective: no centers");
  double worst = 0.0;
  for (const double d : kernels::nearest_distances(nodes, centers)) worst = std::max(worst, d);
  return worst;
}

}  // namespace mules
