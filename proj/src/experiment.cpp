#include "mules/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "mules/simulation.hpp"

namespace mules {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw std::invalid_argument("expected a real number, got '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("expected a non-negative integer, got '" + s + "'");
  return v;
}

std::size_t parse_count(const std::string& s) { return static_cast<std::size_t>(parse_u64(s)); }

std::vector<double> parse_durations(const std::string& s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    const auto parts = split_list(s, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be start:step:end");
    const double start = parse_real(parts[0]);
    const double step = parse_real(parts[1]);
    const double end = parse_real(parts[2]);
    if (step <= 0.0 || end < start) throw std::invalid_argument("range needs step > 0 and end >= start");
    // Multiply instead of accumulating so every value is exact for integral steps.
    for (std::size_t i = 0;; ++i) {
      const double v = start + static_cast<double>(i) * step;
      if (v > end + 1e-9 * step) break;
      out.push_back(v);
    }
  } else {
    for (const auto& item : split_list(s, ',')) out.push_back(parse_real(item));
  }
  for (const double v : out)
    if (v < 0.0) throw std::invalid_argument("fix durations must be non-negative");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_stream(std::ostream& out, const std::string& what) {
  if (!out) throw IoError("failed writing " + what);
}

ObjectiveSummary summary_of(const std::vector<RunRow>& rows) {
  std::vector<ObjectiveSummary> s;
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back(r.summary);
  return aggregate(s).mean;
}

std::string format3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig c;
  bool have_durations = false;
  bool have_strategies = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto where = source + ":" + std::to_string(line_no) + ": ";
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw InputError(where + "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (value.empty()) throw InputError(where + "missing value for '" + key + "'");
    try {
      if (key == "area_width") c.area_width = parse_real(value);
      else if (key == "area_height") c.area_height = parse_real(value);
      else if (key == "nodes") c.nodes = parse_count(value);
      else if (key == "mules") c.mules = parse_count(value);
      else if (key == "failures") c.failures = parse_count(value);
      else if (key == "horizon") c.horizon = parse_real(value);
      else if (key == "fix_durations") {
        c.fix_durations = parse_durations(value);
        have_durations = true;
      } else if (key == "distribution") {
        if (value == "uniform") c.distribution = FailureDistribution::uniform;
        else if (value == "nonuniform") c.distribution = FailureDistribution::nonuniform;
        else throw std::invalid_argument("distribution must be uniform or nonuniform");
      } else if (key == "vicinity_radius") c.vicinity_radius = parse_real(value);
      else if (key == "boost_factor") c.boost_factor = parse_real(value);
      else if (key == "strategies") {
        c.strategies.clear();
        for (const auto& item : split_list(value, ',')) c.strategies.push_back(parse_strategy(item));
        have_strategies = true;
      } else if (key == "seed_base") c.seed_base = parse_u64(value);
      else if (key == "repetitions") c.repetitions = parse_count(value);
      else if (key == "mule_speed") c.mule_speed = parse_real(value);
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(where + e.what());
    }
  }
  const auto at_end = source + ":" + std::to_string(line_no) + ": ";
  if (!have_durations) throw InputError(at_end + "missing 'fix_durations'");
  if (!have_strategies) throw InputError(at_end + "missing 'strategies'");
  if (c.repetitions == 0) throw InputError(at_end + "repetitions must be positive");
  if (c.mules == 0) throw InputError(at_end + "mules must be positive");
  if (!(c.mule_speed > 0.0)) throw InputError(at_end + "mule_speed must be positive");
  std::vector<std::string> seen;
  for (auto& s : c.strategies) {
    if (std::find(seen.begin(), seen.end(), s.name) != seen.end())
      throw InputError(at_end + "strategy '" + s.name + "' listed twice");
    seen.push_back(s.name);
    s.mule_speed = c.mule_speed;
  }
  // Surface scenario parameter errors now rather than mid-batch.
  try {
    UniformParams p{c.area_width, c.area_height, c.nodes, 0, c.fix_durations.front(), c.horizon, c.seed_base};
    (void)generate_uniform(p);
  } catch (const ScenarioError& e) {
    throw InputError(at_end + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open config");
  return parse_config(in, path.string());
}

Scenario make_scenario(const ExperimentConfig& c, double fix_duration, std::uint64_t seed) {
  if (c.distribution == FailureDistribution::uniform)
    return generate_uniform({c.area_width, c.area_height, c.nodes, c.failures, fix_duration, c.horizon, seed});
  NonuniformParams p;
  static_cast<UniformParams&>(p) = {c.area_width, c.area_height, c.nodes, c.failures, fix_duration, c.horizon, seed};
  p.vicinity_radius = c.vicinity_radius;
  p.boost_factor = c.boost_factor;
  return generate_nonuniform(p);
}

std::vector<RunRow> run_batch(const ExperimentConfig& c, int jobs) {
  const std::size_t S = c.strategies.size();
  const std::size_t D = c.fix_durations.size();
  const std::size_t R = c.repetitions;
  std::vector<RunRow> rows(S * D * R);
  std::vector<std::exception_ptr> errors(D * R);

  // One task per (F_d, repetition): every strategy sees the same scenario.
  const auto tasks = static_cast<std::int64_t>(D * R);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
  for (std::int64_t task = 0; task < tasks; ++task) {
    const std::size_t d = static_cast<std::size_t>(task) / R;
    const std::size_t r = static_cast<std::size_t>(task) % R;
    try {
      const std::uint64_t seed = c.seed_base + r;
      const Scenario scenario = make_scenario(c, c.fix_durations[d], seed);
      RunOptions options;
      options.mule_count = c.mules;
      for (std::size_t s = 0; s < S; ++s) {
        const RunResult result = run(scenario, c.strategies[s], options);
        rows[(s * D + d) * R + r] = {c.strategies[s].name, c.fix_durations[d], seed, summarize(result),
                                     result.unserved_count()};
      }
    } catch (...) {
      errors[static_cast<std::size_t>(task)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::vector<RunRow> cell_rows(const std::vector<RunRow>& rows, const std::string& strategy, double fix_duration) {
  std::vector<RunRow> out;
  for (const auto& r : rows)
    if (r.strategy == strategy && r.fix_duration == fix_duration) out.push_back(r);
  std::stable_sort(out.begin(), out.end(), [](const RunRow& a, const RunRow& b) { return a.seed < b.seed; });
  return out;
}

double objective_value(const RunRow& row, const std::string& objective) {
  if (objective == "avg_downtime") return row.summary.avg_downtime;
  if (objective == "max_downtime") return row.summary.max_downtime;
  if (objective == "avg_travel") return row.summary.avg_travel;
  if (objective == "max_travel") return row.summary.max_travel;
  if (objective == "unserved_count") return static_cast<double>(row.unserved);
  throw InputError("unknown objective '" + objective + "'");
}

std::vector<double> column(const std::vector<RunRow>& rows, const std::string& objective) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(objective_value(r, objective));
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<RunRow>& rows) {
  out << "strategy,f_d,seed,avg_downtime,max_downtime,avg_travel,max_travel,unserved_count\n";
  for (const auto& r : rows) {
    out << r.strategy << ',' << format_real(r.fix_duration) << ',' << r.seed << ','
        << format_real(r.summary.avg_downtime) << ',' << format_real(r.summary.max_downtime) << ','
        << format_real(r.summary.avg_travel) << ',' << format_real(r.summary.max_travel) << ',' << r.unserved
        << '\n';
  }
}

std::vector<RunRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("results: empty file");
  if (trim(line) != "strategy,f_d,seed,avg_downtime,max_downtime,avg_travel,max_travel,unserved_count")
    throw InputError("results:1: unexpected header");
  std::vector<RunRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_list(line, ',');
    try {
      if (f.size() != 8) throw std::invalid_argument("expected 8 fields");
      RunRow r;
      r.strategy = f[0];
      r.fix_duration = parse_real(f[1]);
      r.seed = parse_u64(f[2]);
      r.summary = {parse_real(f[3]), parse_real(f[4]), parse_real(f[5]), parse_real(f[6])};
      r.unserved = parse_count(f[7]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw InputError("results:" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (rows.empty()) throw InputError("results: no data rows");
  return rows;
}

void write_summary_csv(std::ostream& out, const ExperimentConfig& c, const std::vector<RunRow>& rows) {
  out << "strategy,f_d,runs,avg_downtime_mean,avg_downtime_sd,max_downtime_mean,max_downtime_sd,"
         "avg_travel_mean,avg_travel_sd,max_travel_mean,max_travel_sd,unserved_mean\n";
  for (const auto& s : c.strategies) {
    for (const double fd : c.fix_durations) {
      const auto cell = cell_rows(rows, s.name, fd);
      if (cell.empty()) continue;
      std::vector<ObjectiveSummary> batch;
      double unserved = 0.0;
      for (const auto& r : cell) {
        batch.push_back(r.summary);
        unserved += static_cast<double>(r.unserved);
      }
      const BatchStatistics st = aggregate(batch);
      out << s.name << ',' << format_real(fd) << ',' << st.runs << ',' << format_real(st.mean.avg_downtime) << ','
          << format_real(st.sd.avg_downtime) << ',' << format_real(st.mean.max_downtime) << ','
          << format_real(st.sd.max_downtime) << ',' << format_real(st.mean.avg_travel) << ','
          << format_real(st.sd.avg_travel) << ',' << format_real(st.mean.max_travel) << ','
          << format_real(st.sd.max_travel) << ',' << format_real(unserved / static_cast<double>(cell.size()))
          << '\n';
    }
  }
}

void write_significance_csv(std::ostream& out, const ExperimentConfig& c, const std::vector<RunRow>& rows) {
  out << "f_d,strategy_a,strategy_b,mean_a,mean_b,t,dof,p\n";
  for (const double fd : c.fix_durations) {
    for (std::size_t i = 0; i < c.strategies.size(); ++i) {
      for (std::size_t j = i + 1; j < c.strategies.size(); ++j) {
        const auto a = column(cell_rows(rows, c.strategies[i].name, fd), "avg_downtime");
        const auto b = column(cell_rows(rows, c.strategies[j].name, fd), "avg_downtime");
        if (a.empty() || b.empty()) continue;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        TTest t{nan, nan, nan};
        try {
          t = welch_t_test(a, b);
        } catch (const std::invalid_argument&) {
          // too few runs or no variance: reported as nan
        }
        double ma = 0.0, mb = 0.0;
        for (const double v : a) ma += v;
        for (const double v : b) mb += v;
        out << format_real(fd) << ',' << c.strategies[i].name << ',' << c.strategies[j].name << ','
            << format_real(ma / static_cast<double>(a.size())) << ',' << format_real(mb / static_cast<double>(b.size()))
            << ',' << format_real(t.t) << ',' << format_real(t.dof) << ',' << format_real(t.p) << '\n';
      }
    }
  }
}

void print_summary(std::ostream& out, const ExperimentConfig& c, const std::vector<RunRow>& rows) {
  out << "strategy  f_d  avg_downtime  max_downtime  avg_travel  max_travel\n";
  for (const auto& s : c.strategies) {
    for (const double fd : c.fix_durations) {
      const auto cell = cell_rows(rows, s.name, fd);
      if (cell.empty()) continue;
      const ObjectiveSummary m = summary_of(cell);
      out << s.name << "  " << format3(fd) << "  " << format3(m.avg_downtime) << "  " << format3(m.max_downtime)
          << "  " << format3(m.avg_travel) << "  " << format3(m.max_travel) << '\n';
    }
  }
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const std::vector<RunRow>& rows) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  auto emit = [&](const char* name, auto&& writer) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string());
    writer(out);
    out.flush();
    check_stream(out, path.string());
  };
  emit("results.csv", [&](std::ostream& o) { write_results_csv(o, rows); });
  emit("summary.csv", [&](std::ostream& o) { write_summary_csv(o, config, rows); });
  emit("significance.csv", [&](std::ostream& o) { write_significance_csv(o, config, rows); });
}

PlotTable pivot(const std::vector<RunRow>& rows, const std::string& objective) {
  if (std::find(objective_names().begin(), objective_names().end(), objective) == objective_names().end())
    throw InputError("unknown objective '" + objective + "'");
  PlotTable t;
  t.objective = objective;
  for (const auto& r : rows) {
    if (std::find(t.strategies.begin(), t.strategies.end(), r.strategy) == t.strategies.end())
      t.strategies.push_back(r.strategy);
    if (std::find(t.fix_durations.begin(), t.fix_durations.end(), r.fix_duration) == t.fix_durations.end())
      t.fix_durations.push_back(r.fix_duration);
  }
  std::sort(t.fix_durations.begin(), t.fix_durations.end());
  for (const double fd : t.fix_durations) {
    std::vector<double> line;
    for (const auto& s : t.strategies) {
      const auto v = column(cell_rows(rows, s, fd), objective);
      double sum = 0.0;
      for (const double x : v) sum += x;
      line.push_back(v.empty() ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(v.size()));
    }
    t.values.push_back(std::move(line));
  }
  return t;
}

void write_plot_csv(std::ostream& out, const PlotTable& t) {
  out << "f_d";
  for (const auto& s : t.strategies) out << ',' << s;
  out << '\n';
  for (std::size_t i = 0; i < t.fix_durations.size(); ++i) {
    out << format_real(t.fix_durations[i]);
    for (const double v : t.values[i]) out << ',' << (std::isnan(v) ? std::string() : format_real(v));
    out << '\n';
  }
}

void write_plot_svg(std::ostream& out, const PlotTable& t) {
  constexpr double W = 640, H = 400, L = 70, R = 170, T = 30, B = 50;
  double xmin = t.fix_durations.empty() ? 0.0 : t.fix_durations.front();
  double xmax = t.fix_durations.empty() ? 1.0 : t.fix_durations.back();
  if (xmax <= xmin) xmax = xmin + 1.0;
  double ymax = 0.0;
  for (const auto& line : t.values)
    for (const double v : line)
      if (!std::isnan(v)) ymax = std::max(ymax, v);
  if (ymax <= 0.0) ymax = 1.0;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - y / ymax * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double yv = ymax * i / 4.0;
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    out << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
        << format3(yv) << "</text>\n";
    out << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << format3(xv) << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">failure duration (F_d)</text>\n";
  out << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (T + H - B) / 2 << ")\">" << t.objective << "</text>\n";
  for (std::size_t s = 0; s < t.strategies.size(); ++s) {
    const char* color = colors[s % std::size(colors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < t.fix_durations.size(); ++i) {
      const double v = t.values[i][s];
      if (!std::isnan(v)) out << px(t.fix_durations[i]) << ',' << py(v) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 * (s + 1) << "\" font-size=\"12\" fill=\"" << color
        << "\">" << t.strategies[s] << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace mules
