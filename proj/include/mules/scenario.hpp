#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mules/geometry.hpp"

namespace mules {

/// splitmix64. Bit-exact in any language with 64-bit wrapping arithmetic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// [0, 1): top 53 bits scaled by 2^-53.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// (0, 1): same draw shifted by half an ulp of the 53-bit grid.
  double uniform_open() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Integer in [0, n), n > 0.
  std::size_t index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

struct Failure {
  std::size_t node_index = 0;
  double start_time = 0.0;
  double fix_duration = 0.0;

  friend bool operator==(const Failure&, const Failure&) = default;
};

/// Immutable experiment input.
struct Scenario {
  double area_width = 0.0;
  double area_height = 0.0;
  std::vector<Point> nodes;
  std::vector<Failure> failures;  // ascending start_time
  double horizon = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct UniformParams {
  double area_width = 100.0;
  double area_height = 100.0;
  std::size_t node_count = 100;
  std::size_t failure_count = 0;
  double fix_duration = 0.0;
  double horizon = 10000.0;
  std::uint64_t seed = 0;
};

struct NonuniformParams : UniformParams {
  double vicinity_radius = 20.0;
  double boost_factor = 2.0;
};

/// Thrown for parameters or files that cannot describe a valid scenario.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two failures at one node must start at least this far apart. It is the
/// time a unit-speed mule idle anywhere in the area needs to reach and fix the
/// node, so the generator never stacks a failure on a node still awaiting
/// service under normal load.
double refailure_gap(const UniformParams& params);

/// Draw order from Rng(seed): n nodes (x then y each); then per failure a
/// node index and an open-interval start time, both redrawn together while
/// they violate refailure_gap. Failures are sorted by (start_time, draw order).
Scenario generate_uniform(const UniformParams& params);

/// Draw order from Rng(seed): n nodes (x then y each); all start times; then,
/// in ascending start order, one weighted node choice per failure. Weights
/// start at 1; after each choice every node within vicinity_radius of the
/// failed node (itself included) has its weight multiplied by boost_factor.
/// Nodes that would violate refailure_gap are skipped by the draw.
Scenario generate_nonuniform(const NonuniformParams& params);

/// Index drawn with probability weights[i] / sum, ignoring entries where
/// eligible[i] == 0 (an empty span means all eligible). Consumes one draw.
/// Throws ScenarioError when no eligible weight is positive.
std::size_t sample_weighted(Rng& rng, std::span<const double> weights, std::span<const char> eligible = {});

/// Multiplies the weight of every node within `radius` of `center` by `factor`.
void boost_vicinity(std::span<double> weights, std::span<const Point> nodes, const Point& center, double radius,
                    double factor);

/// Line format: "X Y n f E_t seed", n lines "x y", f lines
/// "node_index start_time fix_duration". Reals use 17 significant digits so
/// read_scenario reproduces the exact binary values.
void write_scenario(std::ostream& out, const Scenario& scenario);
Scenario read_scenario(std::istream& in);

/// Checks the Scenario invariants; throws ScenarioError naming the first violation.
void validate(const Scenario& scenario);

}  // namespace mules
