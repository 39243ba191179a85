#ifndef JUNCTION_SIMULATION_HPP
#define JUNCTION_SIMULATION_HPP

#include <map>
#include <string>
#include <vector>

#include "junction/collision_avoidance.hpp"
#include "junction/global_planner.hpp"
#include "junction/mpc_controller.hpp"
#include "junction/reference_trajectory.hpp"

namespace junction {

struct AgentSpec {
  int id{0};
  VehicleParams params;
  VehicleState start;
  GoalSpec goal;
  double v_desired{30.0 / 3.6};
  double a_dec_comfort{2.0};
  double replan_threshold{1.0};
  PlannerWeights planner_weights;
  MpcWeights mpc_weights;
  MpcConfig mpc_config;
  AvoidanceConfig avoidance;
  SearchLimits search_limits;
  int reaction_delay_steps{0};
};

struct SimConfig {
  double Ts{0.1};
  double max_duration{60.0};
  double deadlock_timeout{10.0};
  int plant_substeps{4};
};

struct Scenario {
  std::string name;
  std::string description;
  Environment environment;
  std::vector<AgentSpec> agents;
  SimConfig sim;
  PrimitiveSet primitives;  // shared lattice edge set
};

enum class AgentStatus { Running, Arrived, Collided, Deadlocked };

const char* to_string(AgentStatus s);

struct LogRow {
  double t{0.0};
  int agent_id{0};
  double x{0.0};
  double y{0.0};
  double v{0.0};
  double theta{0.0};
  double a{0.0};
  double delta{0.0};
  double deviation_m{0.0};
  int conflict_flag{0};  // 0 none, 1 conflict handled, 2 conflict unavoidable
  AgentStatus status{AgentStatus::Running};
};

struct TrajectoryLog {
  std::vector<LogRow> rows;
};

struct AgentRunStats {
  long nodes_expanded{0};
  double plan_seconds{0.0};
  int replans{0};
  long controller_steps{0};
  double controller_seconds_total{0.0};
  double controller_seconds_max{0.0};
  bool no_path{false};
};

struct RunResult {
  TrajectoryLog log;
  std::map<int, AgentStatus> final_status;
  std::map<int, AgentRunStats> stats;
  long steps{0};
  double sim_seconds{0.0};
  double wall_seconds{0.0};

  double compute_seconds_per_step() const {
    return steps > 0 ? wall_seconds / static_cast<double>(steps) : 0.0;
  }
};

struct Observation {
  int id{0};
  VehicleState state;
};

/// Snapshot of every agent's true state at the start of a step.
using WorldSnapshot = std::vector<VehicleState>;

/// Observations for one agent: all other vehicles within R_detect, read from
/// the snapshot reaction_delay_steps in the past (the oldest snapshot before
/// enough history exists). Both the range test and the reported states use
/// that delayed snapshot.
std::vector<Observation> perceive(const std::vector<WorldSnapshot>& history,
                                  const std::vector<int>& agent_ids,
                                  int ego_index, double r_detect,
                                  int delay_steps);

RunResult run(const Scenario& scenario);

/// run() with an explicit decision order per step (testing hook: decisions
/// within a step must not depend on the order agents are processed in).
RunResult run_with_order(const Scenario& scenario,
                         const std::vector<int>& decision_order);

}  // namespace junction

#endif  // JUNCTION_SIMULATION_HPP
