#include "mules/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace mules {

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : agents_(rows.size()), targets_(rows.size() ? rows.begin()->size() : 0) {
  costs_.reserve(agents_ * targets_);
  for (const auto& row : rows) {
    if (row.size() != targets_) throw std::invalid_argument("CostMatrix: ragged rows");
    costs_.insert(costs_.end(), row.begin(), row.end());
  }
}

Matching min_cost_assignment(const CostMatrix& costs) {
  const std::size_t r = costs.agents();
  const std::size_t c = costs.targets();
  if (r == 0 || c == 0) throw std::invalid_argument("min_cost_assignment: empty cost matrix");
  double scale = 0.0;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t t = 0; t < c; ++t) {
      const double v = costs(a, t);
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("min_cost_assignment: entries must be finite and non-negative");
      scale = std::max(scale, v);
    }

  const std::size_t n = std::max(r, c);
  auto cost = [&](std::size_t a, std::size_t t) { return (a < r && t < c) ? costs(a, t) : 0.0; };

  // Shortest augmenting path Hungarian with potentials; 1-based, column 0 is
  // the virtual source. Afterwards cost(i,j) - u[i] - v[j] >= 0 everywhere.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  // Every optimal matching lives on the tight edges of an optimal dual, so
  // the lexicographic minimum is found greedily on that subgraph: agent i
  // takes the smallest tight target j whose current holder can be re-routed
  // (alternating path over agents > i) to the target i gives up.
  const double eps = 1e-9 * std::max(1.0, scale);
  auto tight = [&](std::size_t a, std::size_t t) { return cost(a, t) - u[a + 1] - v[t + 1] <= eps; };

  std::vector<std::size_t> target_of(n), agent_of(n);
  for (std::size_t j = 1; j <= n; ++j) {
    target_of[owner[j] - 1] = j - 1;
    agent_of[j - 1] = owner[j] - 1;
  }

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> move_to(n);
  std::deque<std::size_t> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t released = target_of[i];
    std::fill(move_to.begin(), move_to.end(), none);
    frontier.assign(1, released);
    while (!frontier.empty()) {
      const std::size_t t = frontier.front();
      frontier.pop_front();
      for (std::size_t a = i + 1; a < n; ++a) {
        if (move_to[a] != none || !tight(a, t)) continue;
        move_to[a] = t;
        frontier.push_back(target_of[a]);
      }
    }
    std::size_t pick = released;
    for (std::size_t j = 0; j < released; ++j) {
      if (tight(i, j) && move_to[agent_of[j]] != none) {
        pick = j;
        break;
      }
    }
    if (pick == released) continue;

    // Shift holders along the alternating path; read the old target before
    // overwriting it.
    std::size_t a = agent_of[pick];
    target_of[i] = pick;
    agent_of[pick] = i;
    while (true) {
      const std::size_t t = move_to[a];
      const std::size_t next = (t == released) ? none : agent_of[t];
      target_of[a] = t;
      agent_of[t] = a;
      if (next == none) break;
      a = next;
    }
  }

  Matching out;
  for (std::size_t a = 0; a < r; ++a)
    if (target_of[a] < c) out.emplace_back(a, target_of[a]);
  return out;
}

double matching_cost(const CostMatrix& costs, const Matching& matching) {
  double total = 0.0;
  for (const auto& [a, t] : matching) total += costs(a, t);
  return total;
}

}  // namespace mules
