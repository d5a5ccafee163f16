#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mules/facility.hpp"

namespace mules {

enum class InitialPlacement { grid, farthest_first, reverse_greedy };
enum class Refinement { none, centroid_adjust, local_search };
enum class Cooperation { static_voronoi, cooperative };
enum class Allocation { closest, closest_available, closest_least_traveled };
enum class Redeployment { none_stay, none_return, farthest_first, reverse_greedy, centroid_adjust, local_search };

/// One point of the trait matrix: how mules start, who answers a failure, and
/// how idle mules reposition afterwards.
struct StrategyConfig {
  std::string name;
  InitialPlacement initial = InitialPlacement::grid;
  Refinement refinement = Refinement::none;
  Cooperation cooperation = Cooperation::cooperative;
  std::optional<Allocation> allocation = Allocation::closest_available;  // unset for static_voronoi
  Redeployment redeployment = Redeployment::none_stay;
  double mule_speed = 1.0;  // distance units per time unit
  std::size_t centroid_rounds = kDefaultCentroidRounds;
  double local_search_step = kDefaultLocalSearchStep;
};

class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// BasicGrid, NoCooperation, KCenter, KMedian, KCentroid, LocalSearch.
const std::vector<std::string>& preset_names();
StrategyConfig preset(std::string_view name);

/// A preset name, or a trait tuple `init[+refine]:cooperation:allocation:redeployment`, e.g.
/// `ff+centroid_adjust:cooperative:closest_available:centroid_adjust` or
/// `grid:static_voronoi:-:none_return`. Tuples are named by their own text.
StrategyConfig parse_strategy(std::string_view text);

/// Canonical tuple text for a configuration.
std::string describe(const StrategyConfig& strategy);

/// Throws StrategyError for an internally inconsistent configuration.
void validate(const StrategyConfig& strategy);

}  // namespace mules
