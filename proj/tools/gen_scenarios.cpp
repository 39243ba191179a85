// Regenerates the bundled scenario library. Usage: gen_scenarios <out_dir>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "junction/scenario_io.hpp"

using namespace junction;

namespace {

constexpr double kDeg = M_PI / 180.0;

void add_polyline(Environment& env, std::initializer_list<Point2> pts) {
  const Point2* prev = nullptr;
  for (const Point2& p : pts) {
    if (prev) env.obstacles.push_back({*prev, p});
    prev = &p;
  }
}

// Four-leg intersection: one 4 m lane per direction, 45-degree corner
// chamfers so turning paths clear the curbs.
Environment fourleg_env(double arm_end = 28.0, double east_end = 0.0) {
  const double hw = 4.0;   // road half width
  const double ch = 5.0;   // chamfer setback
  if (east_end <= 0.0) east_end = arm_end;
  Environment env;
  env.bounds = {-arm_end - 2.0, east_end + 2.0, -arm_end - 2.0, arm_end + 2.0};
  add_polyline(env, {{hw, arm_end}, {hw, hw + ch}, {hw + ch, hw}, {east_end, hw}});
  add_polyline(env, {{-arm_end, hw}, {-hw - ch, hw}, {-hw, hw + ch}, {-hw, arm_end}});
  add_polyline(env,
               {{-hw, -arm_end}, {-hw, -hw - ch}, {-hw - ch, -hw}, {-arm_end, -hw}});
  add_polyline(env,
               {{east_end, -hw}, {hw + ch, -hw}, {hw, -hw - ch}, {hw, -arm_end}});
  return env;
}

Environment t_env(double arm_end = 28.0) {
  const double hw = 4.0;
  const double ch = 5.0;
  Environment env;
  env.bounds = {-arm_end - 2.0, arm_end + 2.0, -arm_end - 2.0, hw + 2.0};
  add_polyline(env, {{-arm_end, hw}, {arm_end, hw}});
  add_polyline(env,
               {{-arm_end, -hw}, {-hw - ch, -hw}, {-hw, -hw - ch}, {-hw, -arm_end}});
  add_polyline(env,
               {{arm_end, -hw}, {hw + ch, -hw}, {hw, -hw - ch}, {hw, -arm_end}});
  return env;
}

// Two 4 m lanes per direction (half width 8 m), larger chamfers.
Environment multilane_env(double arm_end = 30.0) {
  const double hw = 8.0;
  const double ch = 6.0;
  Environment env;
  env.bounds = {-arm_end - 2.0, arm_end + 2.0, -arm_end - 2.0, arm_end + 2.0};
  add_polyline(env, {{hw, arm_end}, {hw, hw + ch}, {hw + ch, hw}, {arm_end, hw}});
  add_polyline(env, {{-arm_end, hw}, {-hw - ch, hw}, {-hw, hw + ch}, {-hw, arm_end}});
  add_polyline(env,
               {{-hw, -arm_end}, {-hw, -hw - ch}, {-hw - ch, -hw}, {-arm_end, -hw}});
  add_polyline(env,
               {{arm_end, -hw}, {hw + ch, -hw}, {hw, -hw - ch}, {hw, -arm_end}});
  return env;
}

// Single-lane roundabout: 6 m island, 14 m outer radius, four 8 m arms.
// A forbidden wedge across the southwest quarter of the ring blocks
// wrong-way (clockwise) circulation for traffic entering from the south.
Environment roundabout_env(double arm_end = 26.0) {
  const double r_isl = 6.0;
  const double r_out = 14.0;
  const double hw = 4.0;
  const double lam = std::asin(hw / r_out);  // arm opening half angle
  Environment env;
  env.bounds = {-arm_end - 2.0, arm_end + 2.0, -arm_end - 2.0, arm_end + 2.0};

  for (const Segment& s : polyline_circle({0, 0}, r_isl, 0.25)) {
    env.obstacles.push_back(s);
  }
  const double mouths[4] = {270.0 * kDeg, 0.0, 90.0 * kDeg, 180.0 * kDeg};
  for (int i = 0; i < 4; ++i) {
    const double a = mouths[i] + lam;
    const double b = mouths[(i + 1) % 4] - lam + (i == 0 ? 2.0 * M_PI : 0.0);
    for (const Segment& s : polyline_arc({0, 0}, r_out, a, b, 0.25)) {
      env.obstacles.push_back(s);
    }
  }
  const double y_mouth = -r_out * std::cos(lam);  // south arm wall start
  add_polyline(env, {{-hw, y_mouth}, {-hw, -arm_end}});
  add_polyline(env, {{hw, y_mouth}, {hw, -arm_end}});
  add_polyline(env, {{-hw, -y_mouth}, {-hw, arm_end}});
  add_polyline(env, {{hw, -y_mouth}, {hw, arm_end}});
  add_polyline(env, {{-y_mouth, -hw}, {arm_end, -hw}});
  add_polyline(env, {{-y_mouth, hw}, {arm_end, hw}});
  add_polyline(env, {{y_mouth, -hw}, {-arm_end, -hw}});
  add_polyline(env, {{y_mouth, hw}, {-arm_end, hw}});

  // the wedge is split into two quads so their chords do not sag inside the
  // drivable band
  auto wedge = [&](double phi_a, double phi_b) {
    const double r_in = 6.5, r_hi = 12.8;
    std::vector<Point2> quad{
        {r_in * std::cos(phi_a), r_in * std::sin(phi_a)},
        {r_hi * std::cos(phi_a), r_hi * std::sin(phi_a)},
        {r_hi * std::cos(phi_b), r_hi * std::sin(phi_b)},
        {r_in * std::cos(phi_b), r_in * std::sin(phi_b)}};
    env.forbidden_regions.push_back(quad);
  };
  wedge(215.0 * kDeg, 235.0 * kDeg);
  wedge(235.0 * kDeg, 255.0 * kDeg);
  return env;
}

AgentSpec agent(int id, VehicleState start, Point2 goal, double goal_theta,
                double v_desired = 30.0 / 3.6) {
  AgentSpec a;
  a.id = id;
  a.start = start;
  a.goal = {goal, goal_theta, 1.0, 15.0 * kDeg};
  a.v_desired = v_desired;
  a.mpc_config = MpcConfig::from(a.params);
  return a;
}

Scenario base(const std::string& name, const std::string& description,
              Environment env, double max_duration = 45.0) {
  Scenario s;
  s.name = name;
  s.description = description;
  s.environment = std::move(env);
  s.primitives = generate_set(9, 30.0 * kDeg, 1.0, 0.25, 2.7);
  s.sim.max_duration = max_duration;
  return s;
}

void emit(const Scenario& s, const std::string& dir) {
  const std::string path = dir + "/" + s.name + ".json";
  std::ofstream out(path);
  out << save_scenario(s);
  std::printf("wrote %s (%zu agents, %zu obstacle segments)\n", path.c_str(),
              s.agents.size(), s.environment.obstacles.size());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "scenarios";

  // ---- isolated four-leg maneuvers (right-hand traffic, lane centers +-2)
  {
    auto s = base("fourleg_left", "single vehicle, left turn south to west",
                  fourleg_env());
    s.agents.push_back(agent(0, {2, -25, 0, M_PI / 2}, {-25, 2}, M_PI));
    emit(s, dir);
  }
  {
    auto s = base("fourleg_through", "single vehicle, straight south to north",
                  fourleg_env());
    s.agents.push_back(agent(0, {2, -25, 0, M_PI / 2}, {2, 25}, M_PI / 2));
    emit(s, dir);
  }
  {
    auto s = base("fourleg_right", "single vehicle, right turn south to east",
                  fourleg_env());
    s.agents.push_back(agent(0, {2, -25, 0, M_PI / 2}, {25, -2}, 0.0));
    emit(s, dir);
  }

  // ---- isolated roundabout maneuvers (counterclockwise circulation)
  {
    auto s = base("roundabout_through", "single vehicle, south to north",
                  roundabout_env());
    s.agents.push_back(agent(0, {2, -22, 0, M_PI / 2}, {2, 22}, M_PI / 2));
    emit(s, dir);
  }
  {
    auto s = base("roundabout_left", "single vehicle, south to west exit",
                  roundabout_env());
    s.agents.push_back(agent(0, {2, -22, 0, M_PI / 2}, {-22, 2}, M_PI));
    emit(s, dir);
  }
  {
    auto s = base("roundabout_uturn", "single vehicle, U-turn back to south",
                  roundabout_env(), 60.0);
    s.agents.push_back(agent(0, {2, -22, 0, M_PI / 2}, {-2, -22}, -M_PI / 2));
    emit(s, dir);
  }

  // ---- T-intersection maneuvers
  {
    auto s = base("t_intersection_left", "left from the stem onto the top road",
                  t_env());
    s.agents.push_back(agent(0, {2, -25, 0, M_PI / 2}, {-25, 2}, M_PI));
    emit(s, dir);
  }
  {
    auto s = base("t_intersection_right", "right from the stem onto the top road",
                  t_env());
    s.agents.push_back(agent(0, {2, -25, 0, M_PI / 2}, {25, -2}, 0.0));
    emit(s, dir);
  }
  {
    auto s = base("t_intersection_through", "straight along the top road",
                  t_env());
    s.agents.push_back(agent(0, {-25, -2, 0, 0.0}, {25, -2}, 0.0));
    emit(s, dir);
  }

  // ---- multi-lane four-leg: through with an in-junction lane change, left
  {
    auto s = base("fourleg_ml_lanechange",
                  "two-lane junction, right lane in, left lane out",
                  multilane_env());
    s.agents.push_back(agent(0, {2, -27, 0, M_PI / 2}, {6, 27}, M_PI / 2));
    emit(s, dir);
  }
  {
    auto s = base("fourleg_ml_left", "two-lane junction, left turn to the west",
                  multilane_env());
    s.agents.push_back(agent(0, {2, -27, 0, M_PI / 2}, {-27, 2}, M_PI));
    emit(s, dir);
  }

  // ---- multi-agent four-leg scenarios: staggered approaches so the
  // interactions resolve by yielding
  {
    auto s = base("fourleg_left_multi",
                  "ego turns left across an oncoming car; a third crosses",
                  fourleg_env(), 60.0);
    s.agents.push_back(agent(0, {2, -25, 0, M_PI / 2}, {-25, 2}, M_PI));
    s.agents.push_back(agent(1, {-2, 27, 0, -M_PI / 2}, {-2, -25}, -M_PI / 2));
    s.agents.push_back(agent(2, {-27, -2, 0, 0.0}, {25, -2}, 0.0, 7.0));
    emit(s, dir);
  }
  {
    auto s = base("fourleg_through_multi",
                  "ego drives straight; crossing traffic from both sides",
                  fourleg_env(), 60.0);
    s.agents.push_back(agent(0, {2, -25, 0, M_PI / 2}, {2, 25}, M_PI / 2));
    s.agents.push_back(agent(1, {25, 2, 0, M_PI}, {-25, 2}, M_PI, 7.5));
    s.agents.push_back(agent(2, {-29, -2, 0, 0.0}, {25, -2}, 0.0, 7.0));
    emit(s, dir);
  }
  {
    auto s = base("fourleg_right_multi",
                  "ego merges right into a platoon heading east",
                  fourleg_env(), 60.0);
    s.agents.push_back(agent(0, {2, -25, 0, M_PI / 2}, {25, -2}, 0.0));
    s.agents.push_back(agent(1, {-25, -2, 0, 0.0}, {25, -2}, 0.0, 7.5));
    s.agents.push_back(agent(2, {-2, 27, 0, -M_PI / 2}, {-2, -25}, -M_PI / 2, 7.0));
    emit(s, dir);
  }

  // ---- multi-agent roundabout scenarios
  {
    auto s = base("roundabout_through_multi",
                  "ego crosses while another car circulates from the east",
                  roundabout_env(), 60.0);
    s.agents.push_back(agent(0, {2, -22, 0, M_PI / 2}, {2, 22}, M_PI / 2));
    s.agents.push_back(agent(1, {24, 2, 0, M_PI}, {-24, 2}, M_PI, 7.5));
    s.agents.push_back(agent(2, {-2, 24, 0, -M_PI / 2}, {-2, -22}, -M_PI / 2, 7.0));
    emit(s, dir);
  }
  {
    auto s = base("roundabout_left_multi",
                  "ego takes the third exit among circulating traffic",
                  roundabout_env(), 70.0);
    s.agents.push_back(agent(0, {2, -22, 0, M_PI / 2}, {-22, 2}, M_PI));
    s.agents.push_back(agent(1, {24, 2, 0, M_PI}, {-24, 2}, M_PI, 7.5));
    s.agents.push_back(agent(2, {-2, 24, 0, -M_PI / 2}, {-2, -22}, -M_PI / 2, 7.0));
    emit(s, dir);
  }
  {
    auto s = base("roundabout_uturn_multi",
                  "ego makes a U-turn while two cars pass through",
                  roundabout_env(), 80.0);
    s.agents.push_back(agent(0, {2, -22, 0, M_PI / 2}, {-2, -22}, -M_PI / 2));
    s.agents.push_back(agent(1, {24, 2, 0, M_PI}, {-24, 2}, M_PI, 7.5));
    s.agents.push_back(agent(2, {-2, 24, 0, -M_PI / 2}, {-2, -22}, -M_PI / 2, 7.0));
    emit(s, dir);
  }

  // ---- accident A: 10 m detection range, 0.5 s reaction latency, 50 km/h
  {
    auto s = base("accident_a_late_detection",
                  "degraded perception: stopping distance exceeds detection",
                  fourleg_env(84.0), 20.0);
    AgentSpec ego = agent(0, {2, -75, 0, M_PI / 2}, {2, 70}, M_PI / 2, 13.9);
    ego.params.v_max = 16.0;
    ego.mpc_config = MpcConfig::from(ego.params);
    ego.avoidance.R_detect = 10.0;
    ego.reaction_delay_steps = 5;
    s.agents.push_back(ego);

    AgentSpec other = agent(1, {-60.3, -2, 0, 0.0}, {70, -2}, 0.0, 10.0);
    other.avoidance.R_detect = 0.0;  // never yields
    s.agents.push_back(other);
    emit(s, dir);
  }

  // ---- accident B: full 50 m detection, intruder at 200 km/h
  {
    auto s = base("accident_b_extreme_speed",
                  "extreme approach speed leaves an empty avoidance set",
                  fourleg_env(84.0, 470.0), 20.0);
    AgentSpec ego = agent(0, {2, -75, 0, M_PI / 2}, {2, 70}, M_PI / 2, 13.9);
    ego.params.v_max = 16.0;
    ego.mpc_config = MpcConfig::from(ego.params);
    ego.avoidance.R_detect = 50.0;
    ego.reaction_delay_steps = 5;
    s.agents.push_back(ego);

    AgentSpec intruder = agent(1, {451.0, 2, 0, M_PI}, {-75, 2}, M_PI, 55.6);
    intruder.params.v_max = 60.0;
    intruder.params.a_max = 30.0;  // synthetic prop vehicle, at speed quickly
    intruder.mpc_config = MpcConfig::from(intruder.params);
    intruder.avoidance.R_detect = 0.0;
    s.agents.push_back(intruder);
    emit(s, dir);
  }

  // ---- scaling: eight independent parallel corridors
  {
    Environment env;
    env.bounds = {-80, 80, -60, 60};
    auto s = base("scaling_8", "eight parallel straight runs for timing",
                  std::move(env), 30.0);
    for (int i = 0; i < 8; ++i) {
      const double y = -42.0 + 12.0 * i;
      s.agents.push_back(agent(i, {-60.0 - (i % 3), y, 0, 0.0}, {60.0, y}, 0.0));
    }
    emit(s, dir);
  }

  return 0;
}
