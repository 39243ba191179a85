#include <cmath>

#include "doctest.h"
#include "junction/scenario_io.hpp"

using namespace junction;

namespace {

const char* kMinimalScenario = R"({
  "name": "mini",
  "description": "one agent, open field",
  "environment": {
    "bounds": {"x_min": -50, "x_max": 50, "y_min": -50, "y_max": 50},
    "obstacles": [
      {"type": "segment", "a": [-10, 5], "b": [10, 5]},
      {"type": "circle", "center": [20, 20], "radius": 3.0}
    ],
    "forbidden_regions": [
      {"points": [[-40, -40], [-30, -40], [-30, -30], [-40, -30]]}
    ]
  },
  "sim": {"Ts": 0.1, "max_duration": 30},
  "agents": [
    {
      "id": 0,
      "start": {"x": 0, "y": 0, "v": 0, "theta": 0},
      "goal": {"center": [20, 0], "theta": 0, "epsilon": 1.0, "delta_theta": "15 deg"},
      "v_desired": "30 km/h"
    }
  ]
})";

}  // namespace

TEST_CASE("load_scenario parses units and defaults") {
  auto s = load_scenario(kMinimalScenario);
  CHECK(s.name == "mini");
  REQUIRE(s.agents.size() == 1);
  const AgentSpec& a = s.agents[0];
  CHECK(a.v_desired == doctest::Approx(30.0 / 3.6));
  CHECK(a.goal.delta_theta == doctest::Approx(15.0 * M_PI / 180.0));
  CHECK(a.mpc_config.Nc == 13);
  CHECK(a.avoidance.N_pred == 30);
  CHECK(s.primitives.count() == 9);
  // the circle obstacle was polylined
  CHECK(s.environment.obstacles.size() > 4);
}

TEST_CASE("load_scenario rejects invariant violations with named fields") {
  // w_par <= 0
  std::string bad1 = kMinimalScenario;
  bad1.replace(bad1.find("\"v_desired\""), 0,
               "\"mpc\": {\"w_perp\": 20, \"w_par\": 0}, ");
  CHECK_THROWS_WITH_AS(load_scenario(bad1),
                       doctest::Contains("w_perp >= w_par > 0"), ScenarioError);

  // N_pred <= Nc
  std::string bad2 = kMinimalScenario;
  bad2.replace(bad2.find("\"v_desired\""), 0,
               "\"avoidance\": {\"N_pred\": 10, \"T_pred\": 1.0}, ");
  CHECK_THROWS_WITH_AS(load_scenario(bad2), doctest::Contains("N_pred"),
                       ScenarioError);

  // zero-length obstacle segment
  std::string bad3 = kMinimalScenario;
  const std::string seg = "{\"type\": \"segment\", \"a\": [-10, 5], \"b\": [10, 5]}";
  bad3.replace(bad3.find(seg), seg.size(),
               "{\"type\": \"segment\", \"a\": [1, 1], \"b\": [1, 1]}");
  CHECK_THROWS_WITH_AS(load_scenario(bad3), doctest::Contains("zero-length"),
                       ScenarioError);

  // malformed JSON
  CHECK_THROWS_AS(load_scenario("{ not json"), ScenarioError);

  // duplicate agent ids
  std::string bad4 = kMinimalScenario;
  const std::string agents_key = "\"agents\": [";
  bad4.replace(bad4.find(agents_key), agents_key.size(),
               "\"agents\": [{\"id\": 0, \"start\": {\"x\": 5, \"y\": 5}, "
               "\"goal\": {\"center\": [9, 9], \"theta\": 0}},");
  CHECK_THROWS_WITH_AS(load_scenario(bad4), doctest::Contains("duplicate"),
                       ScenarioError);
}

TEST_CASE("scenario save/load is a fixed point") {
  auto s1 = load_scenario(kMinimalScenario);
  const std::string text1 = save_scenario(s1);
  auto s2 = load_scenario(text1);
  const std::string text2 = save_scenario(s2);
  CHECK(text1 == text2);
  CHECK(s2.agents.size() == s1.agents.size());
  CHECK(s2.environment.obstacles.size() == s1.environment.obstacles.size());
}

TEST_CASE("trajectory serialization") {
  TrajectoryLog log;

  // empty log: header only
  const std::string empty = format_trajectory(log);
  CHECK(empty ==
        "t,agent_id,x,y,v,theta,a,delta,deviation_m,conflict_flag,status\n");

  log.rows.push_back({0.1, 0, 1.0, 2.0, 3.0, 0.5, 0.2, -0.01, 0.05, 0,
                      AgentStatus::Running});
  log.rows.push_back({0.2, 0, 1.3, 2.0, 3.1, 0.5, 0.2, -0.01, 0.04, 1,
                      AgentStatus::Arrived});
  const std::string text = format_trajectory(log);
  CHECK(text.find("0.100000,0,1.000000,2.000000,3.000000,0.500000") !=
        std::string::npos);
  CHECK(text.find("Arrived") != std::string::npos);

  // parse -> format round trip is byte identical
  auto parsed = read_trajectory(text);
  REQUIRE(parsed.rows.size() == 2);
  CHECK(format_trajectory(parsed) == text);
}

TEST_CASE("compute_metrics basics") {
  Scenario scenario = load_scenario(kMinimalScenario);
  // second agent for the clearance computation
  AgentSpec other = scenario.agents[0];
  other.id = 1;
  scenario.agents.push_back(other);
  // footprint radius 1: length 4, width 2, margin 0
  for (auto& a : scenario.agents) {
    a.params.length = 4.0;
    a.params.width = 2.0;
    a.params.safety_margin = 0.0;
  }

  TrajectoryLog log;
  // both due east, laterally 5 m apart at closest approach
  log.rows.push_back({0.1, 0, 0.0, 0.0, 1.0, 0.0, 0, 0, 0.0, 0, AgentStatus::Running});
  log.rows.push_back({0.1, 1, 0.0, 20.0, 1.0, 0.0, 0, 0, 0.1, 0, AgentStatus::Running});
  log.rows.push_back({0.2, 0, 1.0, 0.0, 1.0, 0.0, 0, 0, 0.2, 1, AgentStatus::Running});
  log.rows.push_back({0.2, 1, 1.0, 5.0, 1.0, 0.0, 0, 0, 0.3, 0, AgentStatus::Running});
  log.rows.push_back({0.3, 0, 2.0, 0.0, 0.0, 0.0, 0, 0, 0.1, 0, AgentStatus::Arrived});
  log.rows.push_back({0.3, 1, 2.0, 8.0, 1.0, 0.0, 0, 0, 0.1, 0, AgentStatus::Running});

  auto rep = compute_metrics(log, scenario);
  CHECK(rep.steps == 3);
  CHECK(rep.min_clearance == doctest::Approx(3.0));
  CHECK(rep.agents[0].max_deviation == doctest::Approx(0.2));
  CHECK(rep.agents[0].arrived);
  CHECK(rep.agents[0].travel_time == doctest::Approx(0.3));
  CHECK(rep.agents[0].stop_episodes == 1);
  CHECK(rep.agents[1].stop_episodes == 0);
  CHECK_FALSE(rep.agents[1].arrived);
}

TEST_CASE("stationary agent on its reference has zero max deviation") {
  Scenario scenario = load_scenario(kMinimalScenario);
  TrajectoryLog log;
  for (int k = 1; k <= 5; ++k) {
    log.rows.push_back(
        {0.1 * k, 0, 3.0, 4.0, 0.0, 0.0, 0, 0, 0.0, 0, AgentStatus::Running});
  }
  auto rep = compute_metrics(log, scenario);
  CHECK(rep.agents[0].max_deviation == 0.0);
  CHECK(rep.agents[0].mean_deviation == 0.0);
}
