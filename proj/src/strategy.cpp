#include "mules/strategy.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace mules {
namespace {

template <class E, std::size_t N>
using Table = std::array<std::pair<std::string_view, E>, N>;

constexpr Table<InitialPlacement, 3> kInitial{{{"grid", InitialPlacement::grid},
                                               {"ff", InitialPlacement::farthest_first},
                                               {"rgreedy", InitialPlacement::reverse_greedy}}};
constexpr Table<Refinement, 2> kRefine{{{"centroid_adjust", Refinement::centroid_adjust},
                                        {"local_search", Refinement::local_search}}};
constexpr Table<Cooperation, 2> kCooperation{{{"static_voronoi", Cooperation::static_voronoi},
                                              {"cooperative", Cooperation::cooperative}}};
constexpr Table<Allocation, 3> kAllocation{{{"closest", Allocation::closest},
                                            {"closest_available", Allocation::closest_available},
                                            {"closest_least_traveled", Allocation::closest_least_traveled}}};
constexpr Table<Redeployment, 6> kRedeploy{{{"none_stay", Redeployment::none_stay},
                                            {"none_return", Redeployment::none_return},
                                            {"ff", Redeployment::farthest_first},
                                            {"rgreedy", Redeployment::reverse_greedy},
                                            {"centroid_adjust", Redeployment::centroid_adjust},
                                            {"local_search", Redeployment::local_search}}};

template <class E, std::size_t N>
E lookup(const Table<E, N>& table, std::string_view key, std::string_view field) {
  for (const auto& [k, v] : table)
    if (k == key) return v;
  throw StrategyError("unknown " + std::string(field) + " '" + std::string(key) + "'");
}

template <class E, std::size_t N>
std::string_view label(const Table<E, N>& table, E value) {
  for (const auto& [k, v] : table)
    if (v == value) return k;
  return "?";
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

StrategyConfig make(std::string name, InitialPlacement init, Refinement refine, Cooperation coop,
                    std::optional<Allocation> alloc, Redeployment redeploy) {
  StrategyConfig s;
  s.name = std::move(name);
  s.initial = init;
  s.refinement = refine;
  s.cooperation = coop;
  s.allocation = alloc;
  s.redeployment = redeploy;
  return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"BasicGrid", "NoCooperation", "KCenter",
                                              "KMedian",   "KCentroid",     "LocalSearch"};
  return names;
}

StrategyConfig preset(std::string_view name) {
  using A = Allocation;
  using C = Cooperation;
  using I = InitialPlacement;
  using R = Redeployment;
  using F = Refinement;
  const std::string n(name);
  if (name == "BasicGrid") return make(n, I::grid, F::none, C::cooperative, A::closest_available, R::none_stay);
  if (name == "NoCooperation") return make(n, I::grid, F::none, C::static_voronoi, std::nullopt, R::none_stay);
  if (name == "KCenter")
    return make(n, I::farthest_first, F::none, C::cooperative, A::closest_available, R::farthest_first);
  if (name == "KMedian")
    return make(n, I::reverse_greedy, F::none, C::cooperative, A::closest_available, R::reverse_greedy);
  if (name == "KCentroid")
    return make(n, I::farthest_first, F::centroid_adjust, C::cooperative, A::closest_available,
                R::centroid_adjust);
  if (name == "LocalSearch")
    return make(n, I::farthest_first, F::local_search, C::cooperative, A::closest_available, R::local_search);
  throw StrategyError("unknown strategy preset '" + n + "'");
}

StrategyConfig parse_strategy(std::string_view text) {
  if (text.find(':') == std::string_view::npos) return preset(text);

  const auto fields = split(text, ':');
  if (fields.size() != 4)
    throw StrategyError("strategy tuple needs 4 ':'-separated fields: '" + std::string(text) + "'");
  StrategyConfig s;
  s.name = std::string(text);

  const auto init = split(fields[0], '+');
  if (init.size() > 2) throw StrategyError("at most one refinement may follow the initial placement");
  s.initial = lookup(kInitial, init[0], "initial placement");
  s.refinement = init.size() == 2 ? lookup(kRefine, init[1], "refinement") : Refinement::none;
  s.cooperation = lookup(kCooperation, fields[1], "cooperation");
  if (fields[2] == "-" || fields[2].empty())
    s.allocation.reset();
  else
    s.allocation = lookup(kAllocation, fields[2], "allocation");
  s.redeployment = lookup(kRedeploy, fields[3], "redeployment");
  validate(s);
  return s;
}

std::string describe(const StrategyConfig& s) {
  std::string out(label(kInitial, s.initial));
  if (s.refinement != Refinement::none) (out += '+') += label(kRefine, s.refinement);
  (out += ':') += label(kCooperation, s.cooperation);
  out += ':';
  out += s.allocation ? label(kAllocation, *s.allocation) : std::string_view("-");
  (out += ':') += label(kRedeploy, s.redeployment);
  return out;
}

void validate(const StrategyConfig& s) {
  if (s.cooperation == Cooperation::static_voronoi && s.allocation)
    throw StrategyError("static_voronoi cooperation allocates by cell ownership; allocation must be '-'");
  if (s.cooperation == Cooperation::cooperative && !s.allocation)
    throw StrategyError("cooperative strategies need an allocation rule");
  if (!std::isfinite(s.mule_speed) || s.mule_speed <= 0.0) throw StrategyError("mule speed must be positive");
  if (s.centroid_rounds == 0) throw StrategyError("centroid rounds must be positive");
  if (!std::isfinite(s.local_search_step) || s.local_search_step <= 0.0)
    throw StrategyError("local search step must be positive");
}

}  // namespace mules
