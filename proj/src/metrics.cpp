#include "mules/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace mules {
namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // n-1 denominator
};

Moments moments(std::span<const double> xs) {
  Moments m;
  if (xs.empty()) return m;
  double sum = 0.0;
  for (const double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  double ss = 0.0;
  for (const double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.var = ss / static_cast<double>(xs.size() - 1);
  return m;
}

}  // namespace

ObjectiveSummary summarize(std::span<const double> downtimes, std::span<const double> travel_totals) {
  ObjectiveSummary s;
  if (!downtimes.empty()) {
    s.avg_downtime = moments(downtimes).mean;
    s.max_downtime = *std::max_element(downtimes.begin(), downtimes.end());
  }
  if (!travel_totals.empty()) {
    s.avg_travel = moments(travel_totals).mean;
    s.max_travel = *std::max_element(travel_totals.begin(), travel_totals.end());
  }
  return s;
}

ObjectiveSummary summarize(const RunResult& result) { return summarize(result.downtimes, result.travel_totals); }

BatchStatistics aggregate(std::span<const ObjectiveSummary> batch) {
  if (batch.empty()) throw std::invalid_argument("aggregate: empty batch");
  BatchStatistics out;
  out.runs = batch.size();
  std::vector<double> column(batch.size());
  auto reduce = [&](double ObjectiveSummary::*field) {
    for (std::size_t i = 0; i < batch.size(); ++i) column[i] = batch[i].*field;
    const Moments m = moments(column);
    out.mean.*field = m.mean;
    out.sd.*field = std::sqrt(m.var);
  };
  reduce(&ObjectiveSummary::avg_downtime);
  reduce(&ObjectiveSummary::max_downtime);
  reduce(&ObjectiveSummary::avg_travel);
  reduce(&ObjectiveSummary::max_travel);
  return out;
}

TTest welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t_test: each sample needs >= 2 values");
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  const double va = ma.var / static_cast<double>(a.size());
  const double vb = mb.var / static_cast<double>(b.size());
  if (va + vb == 0.0) throw std::invalid_argument("welch_t_test: both samples have zero variance");

  TTest out;
  out.t = (ma.mean - mb.mean) / std::sqrt(va + vb);
  out.dof = (va + vb) * (va + vb) /
            (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
  const boost::math::students_t dist(out.dof);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(out.t)));
  out.p = std::clamp(p, std::numeric_limits<double>::min(), 1.0);
  return out;
}

}  // namespace mules
