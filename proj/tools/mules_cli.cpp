// mules: batch experiments, plot data and single-run replays for the mule
// team simulator.
//
//   mules run <config> -o <dir> [--jobs N]
//   mules plotdata <results.csv> --objective <name> [-o file] [--svg file]
//   mules replay <scenario> --strategy <name> -o <log> [--mules N] [--speed S]
//   mules generate -o <scenario> [scenario options]
//
// Exit codes: 0 success, 2 input error, 3 I/O error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mules/experiment.hpp"
#include "mules/simulation.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kIoError = 3;

int cmd_run(const std::string& config_path, const std::string& out_dir, int jobs) {
  const mules::ExperimentConfig config = mules::load_config(config_path);
  const auto rows = mules::run_batch(config, jobs);
  mules::write_outputs(out_dir, config, rows);
  mules::print_summary(std::cout, config, rows);
  return 0;
}

int cmd_plotdata(const std::string& results, const std::string& objective, const std::string& out_path,
                 const std::string& svg_path) {
  std::ifstream in(results);
  if (!in) throw mules::InputError(results + ": cannot open results file");
  const auto table = mules::pivot(mules::read_results_csv(in), objective);
  if (out_path.empty()) {
    mules::write_plot_csv(std::cout, table);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw mules::IoError("cannot open " + out_path);
    mules::write_plot_csv(out, table);
    if (!out.flush()) throw mules::IoError("failed writing " + out_path);
  }
  if (!svg_path.empty()) {
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw mules::IoError("cannot open " + svg_path);
    mules::write_plot_svg(svg, table);
    if (!svg.flush()) throw mules::IoError("failed writing " + svg_path);
  }
  return 0;
}

int cmd_replay(const std::string& scenario_path, const std::string& strategy_name, const std::string& log_path,
               std::size_t mule_count, double speed) {
  std::ifstream in(scenario_path);
  if (!in) throw mules::InputError(scenario_path + ": cannot open scenario");
  mules::Scenario scenario;
  try {
    scenario = mules::read_scenario(in);
  } catch (const mules::ScenarioError& e) {
    throw mules::InputError(scenario_path + ": " + e.what());
  }
  mules::StrategyConfig strategy = mules::parse_strategy(strategy_name);
  strategy.mule_speed = speed;
  mules::RunOptions options;
  options.mule_count = mule_count;
  options.record_events = true;
  const auto result = mules::run(scenario, strategy, options);

  std::ofstream out(log_path, std::ios::binary);
  if (!out) throw mules::IoError("cannot open " + log_path);
  mules::write_event_log(out, result.event_log);
  if (!out.flush()) throw mules::IoError("failed writing " + log_path);
  return 0;
}

int cmd_generate(const mules::NonuniformParams& params, bool nonuniform, const std::string& out_path) {
  const auto scenario = nonuniform ? mules::generate_nonuniform(params) : mules::generate_uniform(params);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw mules::IoError("cannot open " + out_path);
  mules::write_scenario(out, scenario);
  if (!out.flush()) throw mules::IoError("failed writing " + out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mule team simulator: facility-location deployment of mobile sensor repair agents"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int jobs = 1;
  auto* run = app.add_subcommand("run", "Run every (strategy, F_d, seed) of a config; write CSV tables");
  run->add_option("config", config_path, "Experiment config (key = value lines)")->required();
  run->add_option("-o,--output", out_dir, "Output directory")->required();
  run->add_option("--jobs", jobs, "Parallel repetitions")->check(CLI::PositiveNumber);

  std::string results, objective, plot_out, svg_out;
  auto* plot = app.add_subcommand("plotdata", "Pivot results.csv into one column per strategy");
  plot->add_option("results", results, "results.csv from 'run'")->required();
  plot->add_option("--objective", objective, "avg_downtime|max_downtime|avg_travel|max_travel|unserved_count")
      ->required();
  plot->add_option("-o,--output", plot_out, "CSV output (default stdout)");
  plot->add_option("--svg", svg_out, "Also write a line chart");

  std::string scenario_path, strategy_name, log_path;
  std::size_t mule_count = 10;
  double speed = 1.0;
  auto* replay = app.add_subcommand("replay", "Run one scenario and write its event log");
  replay->add_option("scenario", scenario_path, "Scenario file")->required();
  replay->add_option("--strategy", strategy_name, "Preset name or trait tuple")->required();
  replay->add_option("-o,--output", log_path, "Event log output")->required();
  replay->add_option("--mules", mule_count, "Team size")->check(CLI::PositiveNumber);
  replay->add_option("--speed", speed, "Mule speed")->check(CLI::PositiveNumber);

  mules::NonuniformParams gen;
  bool nonuniform = false;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a seeded scenario file");
  generate->add_option("-o,--output", gen_out, "Scenario output")->required();
  generate->add_option("--width", gen.area_width, "Area width");
  generate->add_option("--height", gen.area_height, "Area height");
  generate->add_option("--nodes", gen.node_count, "Node count");
  generate->add_option("--failures", gen.failure_count, "Failure count");
  generate->add_option("--fix-duration", gen.fix_duration, "F_d");
  generate->add_option("--horizon", gen.horizon, "E_t");
  generate->add_option("--seed", gen.seed, "Seed");
  generate->add_flag("--nonuniform", nonuniform, "Vicinity-boosted failure placement");
  generate->add_option("--vicinity-radius", gen.vicinity_radius, "Boost radius");
  generate->add_option("--boost-factor", gen.boost_factor, "Boost factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, jobs);
    if (*plot) return cmd_plotdata(results, objective, plot_out, svg_out);
    if (*replay) return cmd_replay(scenario_path, strategy_name, log_path, mule_count, speed);
    if (*generate) return cmd_generate(gen, nonuniform, gen_out);
  } catch (const mules::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
