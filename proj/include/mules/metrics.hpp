#pragma once

#include <span>
#include <stdexcept>

#include "mules/simulation.hpp"

namespace mules {

/// The four objectives of one run. Average downtime is per failure.
struct ObjectiveSummary {
  double avg_downtime = 0.0;
  double max_downtime = 0.0;
  double avg_travel = 0.0;
  double max_travel = 0.0;
};

ObjectiveSummary summarize(const RunResult& result);
ObjectiveSummary summarize(std::span<const double> downtimes, std::span<const double> travel_totals);

struct BatchStatistics {
  ObjectiveSummary mean;
  ObjectiveSummary sd;  // sample standard deviation, n-1 denominator; 0 for a single run
  std::size_t runs = 0;
};

/// Throws std::invalid_argument on an empty batch.
BatchStatistics aggregate(std::span<const ObjectiveSummary> batch);

struct TTest {
  double t = 0.0;
  double dof = 0.0;
  double p = 1.0;  // two-sided
};

/// Welch's unequal-variance t-test. Needs two samples of size >= 2, at least
/// one with nonzero variance; throws std::invalid_argument otherwise.
TTest welch_t_test(std::span<const double> a, std::span<const double> b);

inline constexpr double kSignificance = 0.05;

}  // namespace mules
