#include "mules/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mules {
namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void check_params(const UniformParams& p) {
  if (!finite_positive(p.area_width) || !finite_positive(p.area_height))
    throw ScenarioError("area dimensions must be positive and finite");
  if (p.node_count == 0) throw ScenarioError("need at least one node");
  if (!finite_positive(p.horizon)) throw ScenarioError("horizon must be positive and finite");
  if (!std::isfinite(p.fix_duration) || p.fix_duration < 0.0)
    throw ScenarioError("fix duration must be finite and non-negative");
}

std::vector<Point> draw_nodes(Rng& rng, const UniformParams& p) {
  std::vector<Point> nodes;
  nodes.reserve(p.node_count);
  for (std::size_t i = 0; i < p.node_count; ++i) {
    const double x = rng.uniform() * p.area_width;
    const double y = rng.uniform() * p.area_height;
    nodes.push_back({x, y});
  }
  return nodes;
}

bool collides(const std::vector<double>& starts_at_node, double t, double gap) {
  return std::any_of(starts_at_node.begin(), starts_at_node.end(),
                     [&](double s) { return std::abs(t - s) < gap; });
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double refailure_gap(const UniformParams& params) {
  return params.fix_duration + std::hypot(params.area_width, params.area_height);
}

Scenario generate_uniform(const UniformParams& params) {
  check_params(params);
  Rng rng(params.seed);
  Scenario s{params.area_width, params.area_height, draw_nodes(rng, params), {}, params.horizon, params.seed};

  const double gap = refailure_gap(params);
  std::vector<std::vector<double>> starts(params.node_count);
  const std::size_t max_attempts = 1000 * (params.failure_count + params.node_count);
  std::size_t attempts = 0;
  s.failures.reserve(params.failure_count);
  while (s.failures.size() < params.failure_count) {
    if (++attempts > max_attempts)
      throw ScenarioError("cannot place " + std::to_string(params.failure_count) +
                          " failures without stacking them on unrepaired nodes");
    const std::size_t node = rng.index(params.node_count);
    const double t = rng.uniform_open() * params.horizon;
    if (collides(starts[node], t, gap)) continue;
    starts[node].push_back(t);
    s.failures.push_back({node, t, params.fix_duration});
  }
  std::stable_sort(s.failures.begin(), s.failures.end(),
                   [](const Failure& a, const Failure& b) { return a.start_time < b.start_time; });
  return s;
}

Scenario generate_nonuniform(const NonuniformParams& params) {
  check_params(params);
  if (!std::isfinite(params.vicinity_radius) || params.vicinity_radius < 0.0)
    throw ScenarioError("vicinity radius must be finite and non-negative");
  if (!std::isfinite(params.boost_factor) || params.boost_factor < 1.0)
    throw ScenarioError("boost factor must be at least 1");

  Rng rng(params.seed);
  Scenario s{params.area_width, params.area_height, draw_nodes(rng, params), {}, params.horizon, params.seed};

  std::vector<double> times(params.failure_count);
  for (double& t : times) t = rng.uniform_open() * params.horizon;
  std::stable_sort(times.begin(), times.end());

  const double gap = refailure_gap(params);
  std::vector<double> weights(params.node_count, 1.0);
  std::vector<double> last_start(params.node_count, -std::numeric_limits<double>::infinity());
  std::vector<char> eligible(params.node_count);
  s.failures.reserve(params.failure_count);
  for (const double t : times) {
    for (std::size_t v = 0; v < params.node_count; ++v) eligible[v] = (t - last_start[v]) >= gap;
    const std::size_t node = sample_weighted(rng, weights, eligible);
    last_start[node] = t;
    s.failures.push_back({node, t, params.fix_duration});
    boost_vicinity(weights, s.nodes, s.nodes[node], params.vicinity_radius, params.boost_factor);
  }
  return s;
}

std::size_t sample_weighted(Rng& rng, std::span<const double> weights, std::span<const char> eligible) {
  auto ok = [&](std::size_t i) { return (eligible.empty() || eligible[i]) && weights[i] > 0.0; };
  double total = 0.0;
  std::size_t last = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!ok(i)) continue;
    total += weights[i];
    last = i;
  }
  if (last == weights.size()) throw ScenarioError("no node is eligible to fail");

  const double r = rng.uniform() * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!ok(i)) continue;
    cumulative += weights[i];
    if (r < cumulative) return i;
  }
  return last;
}

void boost_vicinity(std::span<double> weights, std::span<const Point> nodes, const Point& center, double radius,
                    double factor) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (distance(nodes[i], center) <= radius) weights[i] *= factor;
}

void write_scenario(std::ostream& out, const Scenario& s) {
  out << fmt17(s.area_width) << ' ' << fmt17(s.area_height) << ' ' << s.nodes.size() << ' ' << s.failures.size()
      << ' ' << fmt17(s.horizon) << ' ' << s.seed << '\n';
  for (const Point& p : s.nodes) out << fmt17(p.x) << ' ' << fmt17(p.y) << '\n';
  for (const Failure& f : s.failures)
    out << f.node_index << ' ' << fmt17(f.start_time) << ' ' << fmt17(f.fix_duration) << '\n';
}

Scenario read_scenario(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  auto next_fields = [&](const char* what) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return std::istringstream(line);
    }
    throw ScenarioError("line " + std::to_string(line_no + 1) + ": unexpected end of file, expected " + what);
  };
  auto fail = [&](const char* what) {
    throw ScenarioError("line " + std::to_string(line_no) + ": malformed " + what + ": '" + line + "'");
  };
  auto finish = [&](std::istringstream& ss, const char* what) {
    std::string extra;
    if (ss.fail() || (ss >> extra)) fail(what);
  };

  Scenario s;
  long long n = -1;
  long long f = -1;
  {
    auto ss = next_fields("header");
    ss >> s.area_width >> s.area_height >> n >> f >> s.horizon >> s.seed;
    finish(ss, "header");
    if (n < 0 || f < 0) fail("header");
  }
  s.nodes.resize(static_cast<std::size_t>(n));
  for (Point& p : s.nodes) {
    auto ss = next_fields("node line");
    ss >> p.x >> p.y;
    finish(ss, "node line");
  }
  s.failures.resize(static_cast<std::size_t>(f));
  for (Failure& fl : s.failures) {
    auto ss = next_fields("failure line");
    long long idx = -1;
    ss >> idx >> fl.start_time >> fl.fix_duration;
    if (idx < 0) fail("failure line");
    fl.node_index = static_cast<std::size_t>(idx);
    finish(ss, "failure line");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) fail("trailing content");
  }
  validate(s);
  return s;
}

void validate(const Scenario& s) {
  if (!finite_positive(s.area_width) || !finite_positive(s.area_height))
    throw ScenarioError("area dimensions must be positive and finite");
  if (!finite_positive(s.horizon)) throw ScenarioError("horizon must be positive and finite");
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const Point& p = s.nodes[i];
    if (!(p.x >= 0.0 && p.x <= s.area_width && p.y >= 0.0 && p.y <= s.area_height))
      throw ScenarioError("node " + std::to_string(i) + " lies outside the area");
  }
  for (std::size_t j = 0; j < s.failures.size(); ++j) {
    const Failure& f = s.failures[j];
    if (f.node_index >= s.nodes.size())
      throw ScenarioError("failure " + std::to_string(j) + " references a missing node");
    if (!(f.start_time >= 0.0 && f.start_time <= s.horizon))
      throw ScenarioError("failure " + std::to_string(j) + " starts outside [0, horizon]");
    if (!std::isfinite(f.fix_duration) || f.fix_duration < 0.0)
      throw ScenarioError("failure " + std::to_string(j) + " has a negative fix duration");
    if (j > 0 && f.start_time < s.failures[j - 1].start_time)
      throw ScenarioError("failures are not sorted by start time");
  }
}

}  // namespace mules
