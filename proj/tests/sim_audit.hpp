#pragma once

// Replays an event log and checks it against the run result. Returns a list
// of human-readable violations (empty when everything holds).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mules/scenario.hpp"
#include "mules/simulation.hpp"

namespace audit {

using mules::EventKind;
using mules::EventRecord;
using mules::kNoIndex;

inline bool close(double a, double b, double scale = 1.0) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b), scale});
}

inline std::vector<std::string> check_run(const mules::Scenario& sc, const mules::StrategyConfig& strategy,
                                          const mules::RunResult& res) {
  std::vector<std::string> bad;
  auto fail = [&bad](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    bad.push_back(os.str());
  };

  const std::size_t mules = res.travel_totals.size();
  const std::size_t f = sc.failures.size();
  const double speed = strategy.mule_speed;

  struct Track {
    std::optional<EventRecord> last;  // last position-bearing record
    double length = 0.0;
    std::optional<std::size_t> task;
  };
  std::vector<Track> track(mules);
  std::vector<int> dispatched(f, 0);
  std::vector<std::optional<EventRecord>> dispatch_rec(f);
  std::vector<std::optional<double>> arrive_at(f);

  double prev_time = 0.0;
  for (const auto& e : res.event_log) {
    if (e.time < prev_time) fail("log not time-ordered at t=", e.time);
    prev_time = e.time;
    if (e.time > sc.horizon) fail("event after horizon at t=", e.time);

    if (mules::records_mule_position(e.kind)) {
      if (e.mule >= mules) {
        fail("bad mule id in log");
        continue;
      }
      auto& tr = track[e.mule];
      if (tr.last) {
        const double d = mules::distance(tr.last->where, e.where);
        // No leg may be faster than the mule's speed.
        if (d > speed * (e.time - tr.last->time) + 1e-9 * std::max(1.0, d))
          fail("mule ", e.mule, " moved ", d, " in ", e.time - tr.last->time);
        tr.length += d;
      }
      tr.last = e;
    }

    switch (e.kind) {
      case EventKind::dispatch: {
        auto& tr = track[e.mule];
        if (tr.task) fail("mule ", e.mule, " dispatched to ", e.failure, " while holding ", *tr.task);
        tr.task = e.failure;
        if (++dispatched[e.failure] > 1) fail("failure ", e.failure, " dispatched twice");
        dispatch_rec[e.failure] = e;
        break;
      }
      case EventKind::arrive:
        if (track[e.mule].task != e.failure) fail("mule ", e.mule, " arrived at a failure it does not hold");
        arrive_at[e.failure] = e.time;
        break;
      case EventKind::complete:
        if (track[e.mule].task != e.failure) fail("mule ", e.mule, " completed a failure it does not hold");
        if (!arrive_at[e.failure]) fail("failure ", e.failure, " completed before arrival");
        track[e.mule].task.reset();
        break;
      case EventKind::redeploy:
      case EventKind::redeploy_arrive:
      case EventKind::stop:
        if (track[e.mule].task) fail("mule ", e.mule, " repositioned while holding a task");
        break;
      default: break;
    }
  }

  for (std::size_t i = 0; i < mules; ++i) {
    if (!close(track[i].length, res.travel_totals[i], track[i].length))
      fail("mule ", i, " travel ", res.travel_totals[i], " but log sums to ", track[i].length);
  }

  for (std::size_t j = 0; j < f; ++j) {
    const auto& fl = sc.failures[j];
    const auto& node = sc.nodes[fl.node_index];
    if (res.unserved[j]) {
      if (res.downtimes[j] != sc.horizon - fl.start_time) fail("unserved failure ", j, " has wrong downtime");
      continue;
    }
    if (!arrive_at[j] || !dispatch_rec[j]) {
      fail("served failure ", j, " lacks dispatch/arrive records");
      continue;
    }
    if (res.downtimes[j] != *arrive_at[j] - fl.start_time) fail("failure ", j, " downtime disagrees with log");
    const auto& d = *dispatch_rec[j];
    const double reach = mules::distance(d.where, node) / speed;
    // Lower bound from the dispatch position, and exact straight-line kinematics.
    if (res.downtimes[j] < (d.time - fl.start_time) + reach - 1e-9 * std::max(1.0, reach))
      fail("failure ", j, " downtime below travel lower bound");
    if (!close(*arrive_at[j] - d.time, reach, reach)) fail("failure ", j, " arrival time not straight-line");
    if (d.time < fl.start_time) fail("failure ", j, " dispatched before it started");
  }
  return bad;
}

}  // namespace audit
