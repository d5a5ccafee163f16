#include "mules/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "mules/assignment.hpp"
#include "mules/facility.hpp"

namespace mules {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kNaN = std::numeric_limits<double>::quiet_NaN();

bool own_queue(const StrategyConfig& s) {
  return s.cooperation == Cooperation::static_voronoi || s.allocation == Allocation::closest;
}

bool global_redeployment(Redeployment r) {
  return r != Redeployment::none_stay && r != Redeployment::none_return;
}

class Engine {
 public:
  Engine(const Scenario& scenario, const StrategyConfig& strategy, const RunOptions& options)
      : sc_(scenario), st_(strategy), opt_(options) {
    const std::size_t f = sc_.failures.size();
    res_.downtimes.assign(f, 0.0);
    res_.unserved.assign(f, 0);
    res_.arrival_times.assign(f, kNaN);
    res_.completion_times.assign(f, kNaN);
    res_.served_by.assign(f, kNoIndex);
    in_service_.assign(sc_.nodes.size(), 0);
  }

  RunResult execute() {
    const auto homes = opt_.initial_positions.empty() ? initial_deployment(sc_, st_, opt_.mule_count)
                                                      : opt_.initial_positions;
    mules_.resize(homes.size());
    for (std::size_t i = 0; i < homes.size(); ++i) {
      mules_[i].position = mules_[i].home = homes[i];
      log(0.0, EventKind::deploy, i, kNoIndex, homes[i]);
    }

    while (true) {
      const Next e = next_event();
      if (e.kind == Next::none || e.time > sc_.horizon) break;
      advance(e.time);
      switch (e.kind) {
        case Next::completion: on_completion(e.index, e.time); break;
        case Next::failure: on_failure(e.index, e.time); break;
        case Next::arrival: on_arrival(e.index, e.time); break;
        case Next::none: break;
      }
    }

    bool moving = false;
    for (const auto& m : mules_) moving = moving || is_moving(m);
    if (moving) {
      advance(sc_.horizon);
      for (std::size_t i = 0; i < mules_.size(); ++i)
        if (is_moving(mules_[i])) log(sc_.horizon, EventKind::halt, i, kNoIndex, mules_[i].position);
    }
    for (std::size_t j = 0; j < sc_.failures.size(); ++j) {
      if (!std::isnan(res_.arrival_times[j])) continue;
      res_.unserved[j] = 1;
      res_.downtimes[j] = sc_.horizon - sc_.failures[j].start_time;
      log(sc_.horizon, EventKind::unserved, kNoIndex, j, node_of(j));
    }

    res_.travel_totals.reserve(mules_.size());
    for (const auto& m : mules_) res_.travel_totals.push_back(m.total_traveled);
    return std::move(res_);
  }

 private:
  struct Next {
    // Declaration order is the same-time priority.
    enum Kind { completion, failure, arrival, none } kind = none;
    double time = kInf;
    std::size_t index = kNoIndex;
  };

  Next next_event() const {
    Next best;
    auto consider = [&best](Next::Kind k, double t, std::size_t idx) {
      if (t < best.time || (t == best.time && (k < best.kind || (k == best.kind && idx < best.index))))
        best = {k, t, idx};
    };
    if (next_failure_ < sc_.failures.size())
      consider(Next::failure, sc_.failures[next_failure_].start_time, next_failure_);
    for (std::size_t i = 0; i < mules_.size(); ++i) {
      const auto& m = mules_[i];
      if (m.event_time == kInf) continue;
      consider(m.status == MuleStatus::fixing ? Next::completion : Next::arrival, m.event_time, i);
    }
    return best;
  }

  const Point& node_of(std::size_t failure) const { return sc_.nodes[sc_.failures[failure].node_index]; }

  void log(double t, EventKind kind, std::size_t mule, std::size_t failure, const Point& where) {
    if (opt_.record_events) res_.event_log.push_back({t, kind, mule, failure, where});
  }

  // Moves every travelling mule to its interpolated position at time t.
  void advance(double t) {
    for (auto& m : mules_) {
      if (!is_moving(m)) continue;
      Point next = m.destination;
      if (t < m.leg_end) {
        const double frac = (t - m.leg_start) / (m.leg_end - m.leg_start);
        next = {m.leg_origin.x + frac * (m.destination.x - m.leg_origin.x),
                m.leg_origin.y + frac * (m.destination.y - m.leg_origin.y)};
      }
      m.total_traveled += distance(m.position, next);
      m.position = next;
    }
  }

  void start_leg(MuleState& m, const Point& dest, double t) {
    m.leg_origin = m.position;
    m.destination = dest;
    m.leg_start = t;
    m.leg_end = t + distance(m.position, dest) / st_.mule_speed;
    m.event_time = m.leg_end;
  }

  void assign(std::size_t mule, std::size_t failure, double t) {
    auto& m = mules_[mule];
    if (!is_available(m)) throw std::logic_error("dispatch to a busy mule");
    m.status = MuleStatus::traveling_to_failure;
    m.current_task = failure;
    res_.served_by[failure] = mule;
    in_service_[sc_.failures[failure].node_index] = 1;
    log(t, EventKind::dispatch, mule, failure, m.position);
    start_leg(m, node_of(failure), t);
  }

  void on_failure(std::size_t j, double t) {
    ++next_failure_;
    const Point& node = node_of(j);
    log(t, EventKind::failure, kNoIndex, j, node);
    const Dispatch d = dispatch(node, mules_, st_);
    switch (d.kind) {
      case Dispatch::Kind::assign:
        assign(d.mule, j, t);
        redeploy(t);
        break;
      case Dispatch::Kind::queue_on_mule:
        mules_[d.mule].queue.push_back(j);
        log(t, EventKind::queue, d.mule, j, node);
        break;
      case Dispatch::Kind::queue_pending:
        pending_.push_back(j);
        log(t, EventKind::queue, kNoIndex, j, node);
        break;
    }
  }

  void on_arrival(std::size_t i, double t) {
    auto& m = mules_[i];
    m.total_traveled += distance(m.position, m.destination);
    m.position = m.destination;
    if (m.status == MuleStatus::traveling_to_failure) {
      const std::size_t j = *m.current_task;
      res_.arrival_times[j] = t;
      res_.downtimes[j] = t - sc_.failures[j].start_time;
      m.status = MuleStatus::fixing;
      m.event_time = t + sc_.failures[j].fix_duration;
      log(t, EventKind::arrive, i, j, m.position);
    } else {
      m.status = MuleStatus::idle;
      m.event_time = kInf;
      log(t, EventKind::redeploy_arrive, i, kNoIndex, m.position);
    }
  }

  void on_completion(std::size_t i, double t) {
    auto& m = mules_[i];
    const std::size_t j = *m.current_task;
    res_.completion_times[j] = t;
    in_service_[sc_.failures[j].node_index] = 0;
    m.current_task.reset();
    m.status = MuleStatus::idle;
    m.event_time = kInf;
    log(t, EventKind::complete, i, j, m.position);

    auto& queue = own_queue(st_) ? m.queue : pending_;
    if (const std::size_t next = take_next(queue, sc_.failures); next != kNoIndex) {
      assign(i, next, t);
      redeploy(t);
      return;
    }
    if (st_.redeployment == Redeployment::none_return) {
      if (!(m.position == m.home)) {
        m.status = MuleStatus::redeploying;
        log(t, EventKind::redeploy, i, kNoIndex, m.position);
        start_leg(m, m.home, t);
      }
    } else {
      redeploy(t);
    }
  }

  void redeploy(double t) {
    if (!global_redeployment(st_.redeployment)) return;
    for (const MoveOrder& order : plan_redeployment(mules_, sc_.nodes, in_service_, st_)) {
      auto& m = mules_[order.mule];
      if (order.target == m.position) {
        if (m.status == MuleStatus::redeploying) {
          m.status = MuleStatus::idle;
          m.event_time = kInf;
          log(t, EventKind::stop, order.mule, kNoIndex, m.position);
        }
        continue;
      }
      if (m.status == MuleStatus::redeploying && order.target == m.destination) continue;
      m.status = MuleStatus::redeploying;
      log(t, EventKind::redeploy, order.mule, kNoIndex, m.position);
      start_leg(m, order.target, t);
    }
  }

  const Scenario& sc_;
  const StrategyConfig& st_;
  const RunOptions& opt_;
  std::vector<MuleState> mules_;
  std::deque<std::size_t> pending_;
  std::vector<char> in_service_;
  std::size_t next_failure_ = 0;
  RunResult res_;
};

}  // namespace

bool is_available(const MuleState& m) {
  return m.status == MuleStatus::idle || m.status == MuleStatus::redeploying;
}

bool is_moving(const MuleState& m) {
  return m.status == MuleStatus::traveling_to_failure || m.status == MuleStatus::redeploying;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::deploy: return "deploy";
    case EventKind::failure: return "failure";
    case EventKind::dispatch: return "dispatch";
    case EventKind::queue: return "queue";
    case EventKind::arrive: return "arrive";
    case EventKind::complete: return "complete";
    case EventKind::redeploy: return "redeploy";
    case EventKind::redeploy_arrive: return "redeploy_arrive";
    case EventKind::stop: return "stop";
    case EventKind::halt: return "halt";
    case EventKind::unserved: return "unserved";
  }
  return "?";
}

bool records_mule_position(EventKind kind) {
  switch (kind) {
    case EventKind::deploy:
    case EventKind::dispatch:
    case EventKind::arrive:
    case EventKind::complete:
    case EventKind::redeploy:
    case EventKind::redeploy_arrive:
    case EventKind::stop:
    case EventKind::halt: return true;
    default: return false;
  }
}

std::size_t RunResult::unserved_count() const {
  std::size_t n = 0;
  for (const char u : unserved) n += u ? 1 : 0;
  return n;
}

RunResult run(const Scenario& scenario, const StrategyConfig& strategy, const RunOptions& options) {
  validate(strategy);
  if (options.mule_count == 0 && options.initial_positions.empty())
    throw StrategyError("need at least one mule");
  return Engine(scenario, strategy, options).execute();
}

Dispatch dispatch(const Point& node, std::span<const MuleState> mules, const StrategyConfig& strategy) {
  if (mules.empty()) return {};

  if (strategy.cooperation == Cooperation::static_voronoi) {
    std::vector<Point> homes;
    homes.reserve(mules.size());
    for (const auto& m : mules) homes.push_back(m.home);
    const std::size_t owner = nearest_center_index(node, homes);
    return {is_available(mules[owner]) ? Dispatch::Kind::assign : Dispatch::Kind::queue_on_mule, owner};
  }

  const Allocation rule = strategy.allocation.value_or(Allocation::closest_available);
  std::size_t best = kNoIndex;
  double best_score = kInf;
  for (std::size_t i = 0; i < mules.size(); ++i) {
    const auto& m = mules[i];
    if (rule != Allocation::closest && !is_available(m)) continue;
    double score = distance(m.position, node);
    if (rule == Allocation::closest_least_traveled) score += m.total_traveled;
    if (best == kNoIndex || score < best_score) {
      best = i;
      best_score = score;
    }
  }
  if (best == kNoIndex) return {Dispatch::Kind::queue_pending, kNoIndex};
  if (!is_available(mules[best])) return {Dispatch::Kind::queue_on_mule, best};
  return {Dispatch::Kind::assign, best};
}

std::size_t take_next(std::deque<std::size_t>& queue, std::span<const Failure> failures) {
  if (queue.empty()) return kNoIndex;
  auto best = queue.begin();
  for (auto it = queue.begin(); it != queue.end(); ++it) {
    const auto& a = failures[*it];
    const auto& b = failures[*best];
    if (a.start_time < b.start_time || (a.start_time == b.start_time && *it < *best)) best = it;
  }
  const std::size_t out = *best;
  queue.erase(best);
  return out;
}

std::vector<Point> assign_targets(std::span<const Point> mules, std::span<const Point> targets) {
  std::vector<Point> out(mules.begin(), mules.end());
  if (mules.empty() || targets.empty()) return out;
  CostMatrix costs(mules.size(), targets.size());
  for (std::size_t a = 0; a < mules.size(); ++a)
    for (std::size_t t = 0; t < targets.size(); ++t) costs(a, t) = distance(mules[a], targets[t]);
  for (const auto& [a, t] : min_cost_assignment(costs)) out[a] = targets[t];
  return out;
}

std::vector<MoveOrder> plan_redeployment(std::span<const MuleState> mules, std::span<const Point> nodes,
                                         std::span<const char> excluded, const StrategyConfig& strategy) {
  if (!global_redeployment(strategy.redeployment)) return {};

  std::vector<std::size_t> avail;
  std::vector<Point> from;
  for (std::size_t i = 0; i < mules.size(); ++i) {
    if (!is_available(mules[i])) continue;
    avail.push_back(i);
    from.push_back(mules[i].position);
  }
  std::vector<Point> sites;
  for (std::size_t v = 0; v < nodes.size(); ++v)
    if (excluded.empty() || !excluded[v]) sites.push_back(nodes[v]);
  if (avail.empty() || sites.empty()) return {};

  std::vector<Point> to;
  const PlacementProblem problem{sites, std::min(avail.size(), sites.size())};
  switch (strategy.redeployment) {
    case Redeployment::farthest_first: to = assign_targets(from, farthest_first(problem)); break;
    case Redeployment::reverse_greedy: to = assign_targets(from, reverse_greedy(problem)); break;
    case Redeployment::centroid_adjust: to = centroid_adjust(from, sites, strategy.centroid_rounds); break;
    case Redeployment::local_search:
      to = local_search(from, sites, sites.size(), strategy.local_search_step);
      break;
    default: return {};
  }

  std::vector<MoveOrder> orders;
  orders.reserve(avail.size());
  for (std::size_t k = 0; k < avail.size(); ++k) orders.push_back({avail[k], to[k]});
  return orders;
}

std::vector<Point> initial_deployment(const Scenario& scenario, const StrategyConfig& strategy,
                                      std::size_t mule_count) {
  if (mule_count == 0) throw StrategyError("need at least one mule");
  const std::span<const Point> nodes = scenario.nodes;
  if (strategy.initial != InitialPlacement::grid && mule_count > nodes.size())
    throw StrategyError("placement on node sites needs at least as many nodes as mules");

  std::vector<Point> pos;
  switch (strategy.initial) {
    case InitialPlacement::grid:
      pos = grid_placement(mule_count, scenario.area_width, scenario.area_height);
      break;
    case InitialPlacement::farthest_first: pos = farthest_first({nodes, mule_count}); break;
    case InitialPlacement::reverse_greedy: pos = reverse_greedy({nodes, mule_count}); break;
  }
  switch (strategy.refinement) {
    case Refinement::none: break;
    case Refinement::centroid_adjust: pos = centroid_adjust(pos, nodes, strategy.centroid_rounds); break;
    case Refinement::local_search:
      pos = local_search(pos, nodes, nodes.size(), strategy.local_search_step);
      break;
  }
  return pos;
}

void write_event_log(std::ostream& out, std::span<const EventRecord> log) {
  out << "time,event_kind,mule_id,failure_id,x,y\n";
  char buf[160];
  for (const auto& e : log) {
    const long long mule = e.mule == kNoIndex ? -1 : static_cast<long long>(e.mule);
    const long long failure = e.failure == kNoIndex ? -1 : static_cast<long long>(e.failure);
    std::snprintf(buf, sizeof buf, "%.17g,%s,%lld,%lld,%.17g,%.17g\n", e.time, to_string(e.kind).data(), mule,
                  failure, e.where.x, e.where.y);
    out << buf;
  }
}

}  // namespace mules
