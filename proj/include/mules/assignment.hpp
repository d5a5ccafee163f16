#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace mules {

/// Dense r x c cost grid (agents x targets), row-major. Entries must be
/// finite and non-negative.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t agents, std::size_t targets, double fill = 0.0)
      : agents_(agents), targets_(targets), costs_(agents * targets, fill) {}
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t agents() const { return agents_; }
  std::size_t targets() const { return targets_; }
  double& operator()(std::size_t a, std::size_t t) { return costs_[a * targets_ + t]; }
  double operator()(std::size_t a, std::size_t t) const { return costs_[a * targets_ + t]; }

 private:
  std::size_t agents_ = 0;
  std::size_t targets_ = 0;
  std::vector<double> costs_;
};

using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

/// Minimum-cost matching of size min(r, c) (Hungarian method, O(max(r,c)^3)).
///
/// Rectangular inputs are padded with zero-cost dummies that never appear in
/// the result. Among all optimal matchings the lexicographically smallest
/// (agent, target) list is returned, sorted by agent.
///
/// Throws std::invalid_argument on an empty matrix or a negative/non-finite entry.
Matching min_cost_assignment(const CostMatrix& costs);

/// Sum of the matched entries, accumulated in the order given.
double matching_cost(const CostMatrix& costs, const Matching& matching);

}  // namespace mules
