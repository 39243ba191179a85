#ifndef JUNCTION_SCENARIO_IO_HPP
#define JUNCTION_SCENARIO_IO_HPP

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include "junction/simulation.hpp"

namespace junction {

/// Parse or validation failure; the message names the offending field and
/// the violated rule.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loads a scenario from JSON text. All module invariants are checked here;
/// speeds accept a "km/h" suffix and angles a "deg" suffix, stored
/// internally as m/s and radians.
Scenario load_scenario(const std::string& text);

Scenario load_scenario_file(const std::string& path);

/// Canonical serialization; load(save(s)) is a fixed point.
std::string save_scenario(const Scenario& scenario);

/// Delimited text with the exact header
/// t,agent_id,x,y,v,theta,a,delta,deviation_m,conflict_flag,status and all
/// numbers at six decimals. Byte-deterministic for a given log.
std::string format_trajectory(const TrajectoryLog& log);

void write_trajectory(const TrajectoryLog& log, const std::string& path);

TrajectoryLog read_trajectory(const std::string& text);

struct AgentMetrics {
  double max_deviation{0.0};
  double mean_deviation{0.0};
  double travel_time{-1.0};  // first arrival time, -1 when never arrived
  double v_peak{0.0};
  double min_clearance{kInf};  // gap to the nearest other footprint
  int stop_episodes{0};
  int conflict_steps{0};
  bool arrived{false};
  bool collided{false};
  bool deadlocked{false};
  bool unavoidable_flagged{false};
};

struct MetricsReport {
  std::map<int, AgentMetrics> agents;
  double min_clearance{kInf};
  long steps{0};
  double sim_seconds{0.0};
  // attached by the caller from the live run; not derivable from the log
  std::map<int, AgentRunStats> run_stats;
  double wall_seconds_per_step{0.0};
};

/// Pure function of (log, scenario): deviations and flags are re-read from
/// the rows, clearances recomputed from dual-circle footprints.
MetricsReport compute_metrics(const TrajectoryLog& log,
                              const Scenario& scenario);

/// Merges the live run's planner/controller statistics into the report.
void attach_run_stats(MetricsReport& report, const RunResult& result);

std::string format_metrics(const MetricsReport& report);

}  // namespace junction

#endif  // JUNCTION_SCENARIO_IO_HPP
