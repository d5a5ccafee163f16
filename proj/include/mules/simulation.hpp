#pragma once

// Event-driven simulation of a mule team repairing sensor failures.
//
// Events are failure starts, mule arrivals (at a failed node or at a
// redeployment target) and fix completions. Simultaneous events run in the
// order fix-completion, failure-start, arrival, then by mule/failure index.
// Mules move in straight lines at the strategy's speed and positions are
// interpolated exactly, so there is no time step.

#include <cstddef>
#include <deque>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mules/geometry.hpp"
#include "mules/scenario.hpp"
#include "mules/strategy.hpp"

namespace mules {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

enum class MuleStatus { idle, traveling_to_failure, fixing, redeploying };

struct MuleState {
  Point position;  // current, as of the last time advance
  Point home;      // initial deployment position
  MuleStatus status = MuleStatus::idle;
  double total_traveled = 0.0;
  std::optional<std::size_t> current_task;  // failure index
  std::deque<std::size_t> queue;            // own FIFO (static_voronoi / closest)

  // Current straight-line leg while moving.
  Point leg_origin;
  Point destination;
  double leg_start = 0.0;
  double leg_end = 0.0;

  /// Time of this mule's next arrival or fix completion; infinity if none.
  double event_time = std::numeric_limits<double>::infinity();
};

/// Idle and redeploying mules can take a new failure.
bool is_available(const MuleState& mule);
bool is_moving(const MuleState& mule);

enum class EventKind {
  deploy,           // mule placed at t=0
  failure,          // node failed; x,y = node
  dispatch,         // mule sent to a failure; x,y = mule position
  queue,            // failure queued (on a mule, or globally with mule -1); x,y = node
  arrive,           // mule reached the failed node
  complete,         // fix finished
  redeploy,         // mule starts/changes a repositioning move; x,y = mule position
  redeploy_arrive,  // repositioning move finished
  stop,             // repositioning cancelled in place
  halt,             // mule still moving at the horizon; x,y = position then
  unserved,         // failure not reached by the horizon; x,y = node
};

std::string_view to_string(EventKind kind);

struct EventRecord {
  double time = 0.0;
  EventKind kind = EventKind::deploy;
  std::size_t mule = kNoIndex;
  std::size_t failure = kNoIndex;
  Point where;
};

/// Kinds whose x,y is the mule's own position. Consecutive such records of a
/// mule bound one straight leg, which is how travel is audited from a log.
bool records_mule_position(EventKind kind);

struct RunOptions {
  std::size_t mule_count = 10;
  bool record_events = false;
  /// Explicit home positions; when non-empty they replace the strategy's
  /// initial placement and mule_count is ignored.
  std::vector<Point> initial_positions;
};

struct RunResult {
  std::vector<double> downtimes;         // per failure (scenario order)
  std::vector<char> unserved;            // 1 if no mule arrived by the horizon
  std::vector<double> arrival_times;     // NaN when unserved
  std::vector<double> completion_times;  // NaN when the fix did not finish by the horizon
  std::vector<std::size_t> served_by;    // mule index, kNoIndex when never dispatched
  std::vector<double> travel_totals;     // per mule
  std::vector<EventRecord> event_log;    // only with RunOptions::record_events

  std::size_t unserved_count() const;
};

/// Runs one scenario under one strategy. Deterministic. Throws StrategyError
/// for an inconsistent strategy (or a placement needing more sites than
/// nodes) before any event executes.
RunResult run(const Scenario& scenario, const StrategyConfig& strategy, const RunOptions& options);

struct Dispatch {
  enum class Kind { assign, queue_on_mule, queue_pending };
  Kind kind = Kind::queue_pending;
  std::size_t mule = kNoIndex;

  friend bool operator==(const Dispatch&, const Dispatch&) = default;
};

/// Which mule answers a failure at `node`, given the current team state.
///  - static_voronoi: the owner of the node's cell at the initial deployment
///    (nearest `home`); queued on it while it is busy.
///  - closest: nearest mule, busy or not; queued on it while busy.
///  - closest_available: nearest available mule, else the global queue.
///  - closest_least_traveled: available mule minimising total_traveled plus
///    distance to the node, else the global queue.
/// Ties go to the lowest mule index.
Dispatch dispatch(const Point& node, std::span<const MuleState> mules, const StrategyConfig& strategy);

/// Removes and returns the queued failure with the earliest start time
/// (lowest index on ties); kNoIndex for an empty queue.
std::size_t take_next(std::deque<std::size_t>& queue, std::span<const Failure> failures);

struct MoveOrder {
  std::size_t mule = 0;
  Point target;

  friend bool operator==(const MoveOrder&, const MoveOrder&) = default;
};

/// Optimal (min total distance) mule-to-target matching. Returns one target
/// per mule; mules left without a target keep their own position.
std::vector<Point> assign_targets(std::span<const Point> mules, std::span<const Point> targets);

/// Repositioning orders for every available mule under the strategy's
/// redeployment rule. Nodes flagged in `excluded` (being repaired by a busy
/// mule) are left out of the placement input. Empty for none_stay/none_return.
std::vector<MoveOrder> plan_redeployment(std::span<const MuleState> mules, std::span<const Point> nodes,
                                         std::span<const char> excluded, const StrategyConfig& strategy);

/// Initial positions for `mule_count` mules.
std::vector<Point> initial_deployment(const Scenario& scenario, const StrategyConfig& strategy,
                                      std::size_t mule_count);

/// CSV event log with header `time,event_kind,mule_id,failure_id,x,y`;
/// missing ids are -1, reals have 17 significant digits.
void write_event_log(std::ostream& out, std::span<const EventRecord> log);

}  // namespace mules
