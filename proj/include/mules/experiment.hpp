#pragma once

// Batch experiments: config files, seeded repetitions across strategies, and
// the CSV/SVG outputs of the command-line tool.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mules/metrics.hpp"
#include "mules/scenario.hpp"
#include "mules/strategy.hpp"

namespace mules {

enum class FailureDistribution { uniform, nonuniform };

struct ExperimentConfig {
  double area_width = 100.0;
  double area_height = 100.0;
  std::size_t nodes = 100;
  std::size_t mules = 10;
  std::size_t failures = 100;
  double horizon = 10000.0;
  std::vector<double> fix_durations;  // ascending after parsing
  FailureDistribution distribution = FailureDistribution::uniform;
  double vicinity_radius = 20.0;
  double boost_factor = 2.0;
  std::vector<StrategyConfig> strategies;
  std::uint64_t seed_base = 1;
  std::size_t repetitions = 50;
  double mule_speed = 1.0;
};

/// Bad input (config, results file, options). what() carries the location.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `key = value` lines, `#` starts a comment. Keys: area_width, area_height,
/// nodes, mules, failures, horizon, fix_durations (comma list or
/// start:step:end), distribution (uniform|nonuniform), vicinity_radius,
/// boost_factor, strategies (comma list of presets or trait tuples),
/// seed_base, repetitions, mule_speed. Errors name the offending line.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "config");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Repetition r of every strategy uses seed seed_base + r.
Scenario make_scenario(const ExperimentConfig& config, double fix_duration, std::uint64_t seed);

struct RunRow {
  std::string strategy;
  double fix_duration = 0.0;
  std::uint64_t seed = 0;
  ObjectiveSummary summary;
  std::size_t unserved = 0;
};

/// All (strategy, F_d, repetition) runs, ordered by strategy (config order),
/// then F_d ascending, then seed ascending. `jobs` threads share the work;
/// the result does not depend on it.
std::vector<RunRow> run_batch(const ExperimentConfig& config, int jobs = 1);

/// Rows of one (strategy, F_d) cell, in seed order.
std::vector<RunRow> cell_rows(const std::vector<RunRow>& rows, const std::string& strategy, double fix_duration);
std::vector<double> column(const std::vector<RunRow>& rows, const std::string& objective);

inline const std::vector<std::string>& objective_names() {
  static const std::vector<std::string> names{"avg_downtime", "max_downtime", "avg_travel", "max_travel",
                                              "unserved_count"};
  return names;
}
/// Throws InputError for an unknown name.
double objective_value(const RunRow& row, const std::string& objective);

void write_results_csv(std::ostream& out, const std::vector<RunRow>& rows);
std::vector<RunRow> read_results_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<RunRow>& rows);
void write_significance_csv(std::ostream& out, const ExperimentConfig& config, const std::vector<RunRow>& rows);
/// Human-readable per-cell means, 3 significant digits.
void print_summary(std::ostream& out, const ExperimentConfig& config, const std::vector<RunRow>& rows);

/// Writes results.csv, summary.csv and significance.csv into `dir`.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const std::vector<RunRow>& rows);

/// Means per (strategy, F_d): strategies in first-appearance order, F_d ascending.
struct PlotTable {
  std::string objective;
  std::vector<std::string> strategies;
  std::vector<double> fix_durations;
  std::vector<std::vector<double>> values;  // [fix_duration][strategy], NaN when absent
};

PlotTable pivot(const std::vector<RunRow>& rows, const std::string& objective);
void write_plot_csv(std::ostream& out, const PlotTable& table);
void write_plot_svg(std::ostream& out, const PlotTable& table);

std::string format_real(double v);  // 17 significant digits

}  // namespace mules
