#include "junction/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace junction {

const char* to_string(AgentStatus s) {
  switch (s) {
    case AgentStatus::Running: return "Running";
    case AgentStatus::Arrived: return "Arrived";
    case AgentStatus::Collided: return "Collided";
    case AgentStatus::Deadlocked: return "Deadlocked";
  }
  return "Unknown";
}

std::vector<Observation> perceive(const std::vector<WorldSnapshot>& history,
                                  const std::vector<int>& agent_ids,
                                  int ego_index, double r_detect,
                                  int delay_steps) {
  std::vector<Observation> out;
  if (history.empty() || r_detect <= 0.0) return out;
  const int latest = static_cast<int>(history.size()) - 1;
  const WorldSnapshot& snap = history[std::max(0, latest - delay_steps)];
  const VehicleState& ego = snap[ego_index];
  for (size_t j = 0; j < snap.size(); ++j) {
    if (static_cast<int>(j) == ego_index) continue;
    const double d = std::hypot(snap[j].x - ego.x, snap[j].y - ego.y);
    if (d <= r_detect) out.push_back({agent_ids[j], snap[j]});
  }
  return out;
}

namespace {

struct AgentRuntime {
  AgentSpec spec;
  VehicleState state;
  ControlInput last_input{0.0, 0.0};
  AgentStatus status{AgentStatus::Running};

  ReferenceTrajectory base_ref;
  ReferenceTrajectory active_ref;
  bool has_ref{false};
  bool halted{false};  // planner failed; steady braking from here on
  double s_progress{0.0};

  // stop-episode bookkeeping
  double episode_stop_at{kInf};
  int clear_count{0};
  bool truncation_active{false};

  // last observation per other agent, for steering estimation
  std::map<int, std::pair<double, VehicleState>> last_obs;

  AgentRunStats stats;
  int conflict_flag{0};
};

Configuration config_of(const VehicleState& s) { return {s.x, s.y, s.theta}; }

void plan_reference(AgentRuntime& agent, const Scenario& scenario) {
  const auto t0 = std::chrono::steady_clock::now();
  auto result = search(config_of(agent.state), agent.spec.goal,
                       scenario.primitives, scenario.environment,
                       agent.spec.planner_weights, agent.spec.search_limits,
                       agent.spec.params);
  agent.stats.plan_seconds +=
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  agent.stats.nodes_expanded += result.nodes_expanded;
  if (result.status != SearchStatus::Success) {
    agent.halted = true;
    agent.stats.no_path = true;
    return;
  }
  agent.base_ref =
      assign_speed_profile(result.path, agent.spec.v_desired,
                           agent.spec.params.a_max, agent.spec.a_dec_comfort);
  agent.active_ref = agent.base_ref;
  agent.has_ref = true;
  agent.s_progress = 0.0;
  agent.episode_stop_at = kInf;
  agent.truncation_active = false;
  agent.clear_count = 0;
}

ControlInput decide(AgentRuntime& agent, const Scenario& scenario,
                    const std::vector<Observation>& observed, double t_now) {
  const AgentSpec& spec = agent.spec;
  agent.conflict_flag = 0;

  if (agent.halted) return {0.5 * spec.params.a_min, 0.0};

  if (!agent.has_ref ||
      needs_replan(agent.active_ref, agent.state, spec.replan_threshold)) {
    if (agent.has_ref) ++agent.stats.replans;
    plan_reference(agent, scenario);
    if (agent.halted) return {0.5 * spec.params.a_min, 0.0};
  }

  const double s_now = agent.active_ref.project(
      agent.state.position(), std::max(0.0, agent.s_progress - 2.0));
  agent.s_progress = s_now;

  // conflict prediction runs against the untruncated profile, so an active
  // stop keeps being re-justified until the conflict actually clears
  if (spec.avoidance.R_detect > 0.0 && !observed.empty()) {
    std::vector<PredictedPath> others;
    others.reserve(observed.size());
    for (const Observation& obs : observed) {
      double delta_est = 0.0;
      auto it = agent.last_obs.find(obs.id);
      if (it != agent.last_obs.end() && t_now > it->second.first) {
        delta_est = estimate_steering(it->second.second, obs.state,
                                      t_now - it->second.first, spec.params);
      }
      others.push_back(
          predict_other(obs.id, obs.state, delta_est, spec.params, spec.avoidance));
      agent.last_obs[obs.id] = {t_now, obs.state};
    }

    const PredictedPath ego_path = predict_ego(
        agent.state, agent.base_ref, spec.params, spec.avoidance, s_now);
    const auto report = detect_conflict(ego_path, others, spec.avoidance);

    if (report) {
      const StopPlan plan = plan_stop(*report, agent.state, s_now,
                                      agent.base_ref, spec.params, spec.avoidance);
      if (plan.applied) {
        agent.conflict_flag = plan.unavoidable ? 2 : 1;
        agent.episode_stop_at =
            std::min(agent.episode_stop_at, s_now + plan.s_stop);
        agent.active_ref = truncate_for_stop(
            agent.base_ref, s_now, std::max(0.0, agent.episode_stop_at - s_now));
        agent.truncation_active = true;
        agent.clear_count = 0;
      }
    } else if (agent.truncation_active) {
      if (++agent.clear_count >= spec.avoidance.K_clear) {
        agent.active_ref = agent.base_ref;  // restore the full profile
        agent.truncation_active = false;
        agent.episode_stop_at = kInf;
      }
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  MpcSolution sol = step(agent.state, agent.last_input, agent.active_ref,
                         spec.params, spec.mpc_weights, spec.mpc_config, s_now);
  const double dt_wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  ++agent.stats.controller_steps;
  agent.stats.controller_seconds_total += dt_wall;
  agent.stats.controller_seconds_max =
      std::max(agent.stats.controller_seconds_max, dt_wall);
  return sol.u0;
}

}  // namespace

RunResult run(const Scenario& scenario) {
  std::vector<int> order;
  for (const AgentSpec& a : scenario.agents) order.push_back(a.id);
  std::sort(order.begin(), order.end());
  return run_with_order(scenario, order);
}

RunResult run_with_order(const Scenario& scenario,
                         const std::vector<int>& decision_order) {
  const auto wall0 = std::chrono::steady_clock::now();
  RunResult result;

  std::vector<AgentRuntime> agents;
  std::vector<int> ids;
  for (const AgentSpec& spec : scenario.agents) {
    AgentRuntime rt;
    rt.spec = spec;
    rt.state = spec.start;
    agents.push_back(std::move(rt));
    ids.push_back(spec.id);
  }
  // stable index ordering by id: decisions, plants and logs all follow it
  std::vector<size_t> by_id(agents.size());
  for (size_t i = 0; i < by_id.size(); ++i) by_id[i] = i;
  std::sort(by_id.begin(), by_id.end(), [&](size_t a, size_t b) {
    return agents[a].spec.id < agents[b].spec.id;
  });

  auto index_of_id = [&](int id) -> int {
    for (size_t i = 0; i < agents.size(); ++i) {
      if (agents[i].spec.id == id) return static_cast<int>(i);
    }
    return -1;
  };

  int max_delay = 0;
  for (const auto& a : agents) {
    max_delay = std::max(max_delay, a.spec.reaction_delay_steps);
  }

  std::vector<WorldSnapshot> history;
  const double Ts = scenario.sim.Ts;
  const long max_steps =
      static_cast<long>(std::ceil(scenario.sim.max_duration / Ts));
  double all_stopped_since = -1.0;

  auto any_running = [&] {
    return std::any_of(agents.begin(), agents.end(), [](const AgentRuntime& a) {
      return a.status == AgentStatus::Running;
    });
  };

  long k = 0;
  for (; k < max_steps && !agents.empty() && any_running(); ++k) {
    const double t = static_cast<double>(k) * Ts;

    WorldSnapshot snap;
    snap.reserve(agents.size());
    for (const auto& a : agents) snap.push_back(a.state);
    history.push_back(snap);
    if (static_cast<int>(history.size()) > max_delay + 1) {
      history.erase(history.begin());
    }

    // decision phase: every agent reads the same start-of-step snapshot
    std::vector<ControlInput> inputs(agents.size());
    for (int id : decision_order) {
      const int i = index_of_id(id);
      if (i < 0) continue;
      AgentRuntime& agent = agents[i];
      switch (agent.status) {
        case AgentStatus::Running: {
          const auto obs = perceive(history, ids, i, agent.spec.avoidance.R_detect,
                                    agent.spec.reaction_delay_steps);
          inputs[i] = decide(agent, scenario, obs, t);
          break;
        }
        case AgentStatus::Arrived:
          // ease to a stop inside the goal region and hold
          inputs[i] = {agent.state.v > 1e-3 ? -2.0 : 0.0, 0.0};
          break;
        default:
          inputs[i] = {0.0, 0.0};
          break;
      }
    }

    // plant phase: all agents advance in lockstep substeps with a collision
    // audit after each substep; colliding vehicles freeze at the contact
    const int nsub = std::max(1, scenario.sim.plant_substeps);
    const double h = Ts / nsub;
    for (int sub = 0; sub < nsub; ++sub) {
      for (size_t i : by_id) {
        AgentRuntime& a = agents[i];
        if (a.status == AgentStatus::Collided ||
            a.status == AgentStatus::Deadlocked) {
          continue;
        }
        a.state = step_plant(a.state, inputs[i], a.spec.params, h);
      }
      for (size_t ii = 0; ii < by_id.size(); ++ii) {
        for (size_t jj = ii + 1; jj < by_id.size(); ++jj) {
          AgentRuntime& a = agents[by_id[ii]];
          AgentRuntime& b = agents[by_id[jj]];
          if (a.status == AgentStatus::Collided &&
              b.status == AgentStatus::Collided) {
            continue;
          }
          if (footprints_overlap(footprint_at(a.state, a.spec.params),
                                 footprint_at(b.state, b.spec.params))) {
            a.status = AgentStatus::Collided;
            b.status = AgentStatus::Collided;
          }
        }
      }
    }

    // arrival on the true state
    for (size_t i : by_id) {
      AgentRuntime& a = agents[i];
      if (a.status == AgentStatus::Running &&
          is_goal(config_of(a.state), a.spec.goal)) {
        a.status = AgentStatus::Arrived;
      }
    }

    // deadlock: every running agent stationary for longer than the timeout
    bool all_stationary = true;
    bool have_running = false;
    for (const auto& a : agents) {
      if (a.status != AgentStatus::Running) continue;
      have_running = true;
      if (a.state.v > 0.05) all_stationary = false;
    }
    const double t_next = static_cast<double>(k + 1) * Ts;
    if (have_running && all_stationary) {
      if (all_stopped_since < 0.0) all_stopped_since = t_next;
      if (t_next - all_stopped_since >= scenario.sim.deadlock_timeout) {
        for (auto& a : agents) {
          if (a.status == AgentStatus::Running) {
            a.status = AgentStatus::Deadlocked;
          }
        }
      }
    } else {
      all_stopped_since = -1.0;
    }

    for (size_t i : by_id) {
      AgentRuntime& a = agents[i];
      LogRow row;
      row.t = t_next;
      row.agent_id = a.spec.id;
      row.x = a.state.x;
      row.y = a.state.y;
      row.v = a.state.v;
      row.theta = a.state.theta;
      row.a = inputs[i].a;
      row.delta = inputs[i].delta;
      row.deviation_m =
          a.has_ref ? a.active_ref.distance_to(a.state.position()) : 0.0;
      row.conflict_flag = a.conflict_flag;
      row.status = a.status;
      result.log.rows.push_back(row);
      a.last_input = inputs[i];
    }
  }

  result.steps = k;
  result.sim_seconds = static_cast<double>(k) * Ts;
  for (const auto& a : agents) {
    result.final_status[a.spec.id] = a.status;
    result.stats[a.spec.id] = a.stats;
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0)
          .count();
  return result;
}

}  // namespace junction
