#include "junction/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace junction {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError(where + ": " + what);
}

double parse_speed(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::istringstream in(s);
    double value = 0.0;
    std::string unit;
    in >> value >> unit;
    if (in.fail()) fail(where, "cannot parse speed '" + s + "'");
    if (unit == "km/h" || unit == "kph") return value / 3.6;
    if (unit == "m/s" || unit.empty()) return value;
    fail(where, "unknown speed unit '" + unit + "'");
  }
  fail(where, "expected a number or a string with a unit");
}

double parse_angle(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::istringstream in(s);
    double value = 0.0;
    std::string unit;
    in >> value >> unit;
    if (in.fail()) fail(where, "cannot parse angle '" + s + "'");
    if (unit == "deg" || unit == "degrees") return value * M_PI / 180.0;
    if (unit == "rad" || unit.empty()) return value;
    fail(where, "unknown angle unit '" + unit + "'");
  }
  fail(where, "expected a number or a string with a unit");
}

double num(const Json& obj, const char* key, double fallback,
           const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(where + "." + key, "expected a number");
  return obj[key].get<double>();
}

Point2 parse_point(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where, "expected [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

bool convex(const std::vector<Point2>& poly) {
  if (poly.size() < 3) return false;
  int sign = 0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const Point2& c = poly[(i + 2) % n];
    const double cross =
        (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    if (cross > 1e-12) {
      if (sign < 0) return false;
      sign = 1;
    } else if (cross < -1e-12) {
      if (sign > 0) return false;
      sign = -1;
    }
  }
  return true;
}

Environment parse_environment(const Json& j) {
  Environment env;
  if (!j.contains("bounds")) fail("environment", "missing bounds");
  const Json& b = j["bounds"];
  env.bounds = {b.at("x_min").get<double>(), b.at("x_max").get<double>(),
                b.at("y_min").get<double>(), b.at("y_max").get<double>()};
  if (!(env.bounds.x_min < env.bounds.x_max) ||
      !(env.bounds.y_min < env.bounds.y_max)) {
    fail("environment.bounds", "min must be below max");
  }

  constexpr double kChordError = 0.25;  // polylining tolerance for circles
  for (const Json& o : j.value("obstacles", Json::array())) {
    const std::string type = o.value("type", "polyline");
    const std::string where = "environment.obstacles[" + type + "]";
    if (type == "polyline") {
      std::vector<Point2> pts;
      for (const Json& p : o.at("points")) pts.push_back(parse_point(p, where));
      if (pts.size() < 2) fail(where, "polyline needs at least two points");
      for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if ((pts[i + 1] - pts[i]).norm() < 1e-9) {
          fail(where, "zero-length segment rejected");
        }
        env.obstacles.push_back({pts[i], pts[i + 1]});
      }
    } else if (type == "segment") {
      const Point2 a = parse_point(o.at("a"), where);
      const Point2 b2 = parse_point(o.at("b"), where);
      if ((b2 - a).norm() < 1e-9) fail(where, "zero-length segment rejected");
      env.obstacles.push_back({a, b2});
    } else if (type == "circle") {
      const Point2 c = parse_point(o.at("center"), where);
      const double r = o.at("radius").get<double>();
      if (!(r > 0.0)) fail(where, "radius must be positive");
      for (const Segment& s : polyline_circle(c, r, kChordError)) {
        env.obstacles.push_back(s);
      }
    } else if (type == "arc") {
      const Point2 c = parse_point(o.at("center"), where);
      const double r = o.at("radius").get<double>();
      const double p0 = parse_angle(o.at("phi0"), where + ".phi0");
      const double p1 = parse_angle(o.at("phi1"), where + ".phi1");
      if (!(r > 0.0)) fail(where, "radius must be positive");
      for (const Segment& s : polyline_arc(c, r, p0, p1, kChordError)) {
        env.obstacles.push_back(s);
      }
    } else {
      fail(where, "unknown obstacle type");
    }
  }

  for (const Json& f : j.value("forbidden_regions", Json::array())) {
    std::vector<Point2> poly;
    for (const Json& p : f.at("points")) {
      poly.push_back(parse_point(p, "environment.forbidden_regions"));
    }
    if (!convex(poly)) {
      fail("environment.forbidden_regions",
           "polygons must be simple, closed and convex");
    }
    env.forbidden_regions.push_back(std::move(poly));
  }

  for (const Segment& s : env.obstacles) {
    if (!env.bounds.contains(s.a.x, s.a.y) ||
        !env.bounds.contains(s.b.x, s.b.y)) {
      fail("environment.obstacles", "geometry must lie within bounds");
    }
  }
  return env;
}

VehicleParams parse_params(const Json& j, const std::string& where) {
  VehicleParams p;
  p.wheelbase = num(j, "wheelbase", p.wheelbase, where);
  p.length = num(j, "length", p.length, where);
  p.width = num(j, "width", p.width, where);
  if (j.contains("delta_max")) {
    p.delta_max = parse_angle(j["delta_max"], where + ".delta_max");
  }
  if (j.contains("delta_rate_max")) {
    p.delta_rate_max = parse_angle(j["delta_rate_max"], where + ".delta_rate_max");
  }
  p.a_min = num(j, "a_min", p.a_min, where);
  p.a_max = num(j, "a_max", p.a_max, where);
  if (j.contains("v_min")) p.v_min = parse_speed(j["v_min"], where + ".v_min");
  if (j.contains("v_max")) p.v_max = parse_speed(j["v_max"], where + ".v_max");
  p.safety_margin = num(j, "safety_margin", p.safety_margin, where);

  if (!(p.wheelbase > 0.0)) fail(where, "wheelbase must be > 0");
  if (!(p.delta_max < M_PI / 2.0)) fail(where, "delta_max must be < pi/2");
  if (!(p.a_min < 0.0 && 0.0 < p.a_max)) fail(where, "need a_min < 0 < a_max");
  if (!(0.0 <= p.v_min && p.v_min < p.v_max)) {
    fail(where, "need 0 <= v_min < v_max");
  }
  return p;
}

AgentSpec parse_agent(const Json& j, double sim_Ts) {
  AgentSpec a;
  a.id = j.at("id").get<int>();
  const std::string where = "agents[" + std::to_string(a.id) + "]";

  if (j.contains("params")) a.params = parse_params(j["params"], where + ".params");

  const Json& st = j.at("start");
  a.start.x = st.at("x").get<double>();
  a.start.y = st.at("y").get<double>();
  a.start.v = st.contains("v") ? parse_speed(st["v"], where + ".start.v") : 0.0;
  a.start.theta =
      st.contains("theta") ? parse_angle(st["theta"], where + ".start.theta") : 0.0;
  a.start.theta = wrap_to_pi(a.start.theta);

  const Json& gl = j.at("goal");
  a.goal.center = parse_point(gl.at("center"), where + ".goal.center");
  a.goal.theta_G = parse_angle(gl.at("theta"), where + ".goal.theta");
  a.goal.epsilon = num(gl, "epsilon", 1.0, where + ".goal");
  a.goal.delta_theta = gl.contains("delta_theta")
                           ? parse_angle(gl["delta_theta"], where + ".goal.delta_theta")
                           : 15.0 * M_PI / 180.0;
  if (!(a.goal.epsilon > 0.0)) fail(where + ".goal", "epsilon must be > 0");
  if (!(a.goal.delta_theta > 0.0)) {
    fail(where + ".goal", "delta_theta must be > 0");
  }

  if (j.contains("v_desired")) {
    a.v_desired = parse_speed(j["v_desired"], where + ".v_desired");
  }
  if (!(a.v_desired <= a.params.v_max)) {
    fail(where + ".v_desired", "must not exceed v_max");
  }
  a.a_dec_comfort = num(j, "a_dec_comfort", 2.0, where);
  a.replan_threshold = num(j, "replan_threshold", 1.0, where);

  if (j.contains("planner_weights")) {
    const Json& w = j["planner_weights"];
    const std::string ww = where + ".planner_weights";
    a.planner_weights.w_hd = num(w, "w_hd", 1.0, ww);
    a.planner_weights.w_htheta = num(w, "w_htheta", 2.7, ww);
    a.planner_weights.w_hphi = num(w, "w_hphi", 15.0, ww);
    a.planner_weights.w_cd = num(w, "w_cd", 1.0, ww);
    a.planner_weights.w_cphi = num(w, "w_cphi", 5.0, ww);
    a.planner_weights.w_cc = num(w, "w_cc", 0.0, ww);
    a.planner_weights.d_safe = num(w, "d_safe", 2.0, ww);
    for (double v : {a.planner_weights.w_hd, a.planner_weights.w_htheta,
                     a.planner_weights.w_hphi, a.planner_weights.w_cd,
                     a.planner_weights.w_cphi, a.planner_weights.w_cc}) {
      if (v < 0.0) fail(ww, "weights must be nonnegative");
    }
  }

  const std::string wm = where + ".mpc";
  const Json m = j.contains("mpc") ? j["mpc"] : Json::object();
  a.mpc_config = MpcConfig::from(a.params,
                                 static_cast<int>(num(m, "Nc", 13, wm)), sim_Ts);
  if (a.mpc_config.Nc < 2) fail(wm + ".Nc", "horizon must be at least 2");
  a.mpc_weights.w_perp = num(m, "w_perp", 20.0, wm);
  a.mpc_weights.w_par = num(m, "w_par", 1.0, wm);
  if (!(a.mpc_weights.w_perp >= a.mpc_weights.w_par &&
        a.mpc_weights.w_par > 0.0)) {
    fail(wm, "tracking weights must satisfy w_perp >= w_par > 0");
  }
  a.mpc_weights.q_thetav[0] = num(m, "q_theta", 0.5, wm);
  a.mpc_weights.q_thetav[1] = num(m, "q_v", 0.0, wm);
  a.mpc_weights.r[0] = num(m, "r_acc", 0.1, wm);
  a.mpc_weights.r[1] = num(m, "r_steer", 0.01, wm);
  a.mpc_weights.r_d[0] = num(m, "rd_acc", 10.0, wm);
  a.mpc_weights.r_d[1] = num(m, "rd_steer", 1.0, wm);
  if (m.contains("qf")) {
    const Json& qf = m["qf"];
    if (!qf.is_array() || qf.size() != 4) fail(wm + ".qf", "expected 4 values");
    for (int i = 0; i < 4; ++i) a.mpc_weights.q_f[i] = qf[i].get<double>();
  }

  const std::string wa = where + ".avoidance";
  const Json av = j.contains("avoidance") ? j["avoidance"] : Json::object();
  a.avoidance.R_detect = num(av, "R_detect", 50.0, wa);
  a.avoidance.T_pred = num(av, "T_pred", 3.0, wa);
  a.avoidance.N_pred = static_cast<int>(num(av, "N_pred", 30, wa));
  a.avoidance.dt = num(av, "dt", sim_Ts, wa);
  a.avoidance.epsilon = num(av, "epsilon", a.params.safety_margin, wa);
  a.avoidance.K_clear = static_cast<int>(num(av, "K_clear", 5, wa));
  if (std::abs(a.avoidance.N_pred * a.avoidance.dt - a.avoidance.T_pred) > 1e-9) {
    fail(wa, "N_pred * dt must equal T_pred");
  }
  if (a.avoidance.N_pred <= a.mpc_config.Nc) {
    fail(wa, "N_pred must exceed the MPC horizon Nc");
  }

  a.reaction_delay_steps = static_cast<int>(num(j, "reaction_delay_steps", 0, where));
  if (a.reaction_delay_steps < 0) {
    fail(where + ".reaction_delay_steps", "must be >= 0");
  }

  if (j.contains("search_limits")) {
    const Json& sl = j["search_limits"];
    a.search_limits.max_expansions =
        static_cast<long>(num(sl, "max_expansions", 200000, where));
    a.search_limits.max_seconds = num(sl, "max_seconds", 20.0, where);
  }
  return a;
}

}  // namespace

Scenario load_scenario(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(std::string("parse error: ") + e.what());
  }

  Scenario s;
  s.name = j.value("name", "unnamed");
  s.description = j.value("description", "");
  if (!j.contains("environment")) fail("scenario", "missing environment");
  s.environment = parse_environment(j["environment"]);

  s.sim.Ts = num(j.contains("sim") ? j["sim"] : Json::object(), "Ts", 0.1, "sim");
  if (!(s.sim.Ts > 0.0)) fail("sim.Ts", "must be > 0");
  if (j.contains("sim")) {
    s.sim.max_duration = num(j["sim"], "max_duration", 60.0, "sim");
    s.sim.deadlock_timeout = num(j["sim"], "deadlock_timeout", 10.0, "sim");
    s.sim.plant_substeps =
        static_cast<int>(num(j["sim"], "plant_substeps", 4, "sim"));
  }

  const Json p = j.contains("primitives") ? j["primitives"] : Json::object();
  const int count = static_cast<int>(num(p, "count", 9, "primitives"));
  const double delta_max = p.contains("delta_max")
                               ? parse_angle(p["delta_max"], "primitives.delta_max")
                               : 30.0 * M_PI / 180.0;
  const double arc_length = num(p, "arc_length", 1.0, "primitives");
  const double spacing = num(p, "sample_spacing", 0.25, "primitives");
  const double wheelbase = num(p, "wheelbase", 2.7, "primitives");
  try {
    s.primitives = generate_set(count, delta_max, arc_length, spacing, wheelbase);
  } catch (const std::invalid_argument& e) {
    fail("primitives", e.what());
  }

  std::map<int, bool> seen;
  for (const Json& ja : j.value("agents", Json::array())) {
    AgentSpec a = parse_agent(ja, s.sim.Ts);
    if (seen.count(a.id)) fail("agents", "duplicate agent id");
    seen[a.id] = true;
    s.agents.push_back(std::move(a));
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string save_scenario(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["description"] = s.description;

  Json env;
  env["bounds"] = {{"x_min", s.environment.bounds.x_min},
                   {"x_max", s.environment.bounds.x_max},
                   {"y_min", s.environment.bounds.y_min},
                   {"y_max", s.environment.bounds.y_max}};
  Json obstacles = Json::array();
  // circles and arcs were polylined at load; segments serialize them all
  for (const Segment& seg : s.environment.obstacles) {
    obstacles.push_back({{"type", "segment"},
                         {"a", {seg.a.x, seg.a.y}},
                         {"b", {seg.b.x, seg.b.y}}});
  }
  env["obstacles"] = obstacles;
  Json regions = Json::array();
  for (const auto& poly : s.environment.forbidden_regions) {
    Json pts = Json::array();
    for (const Point2& p : poly) pts.push_back({p.x, p.y});
    regions.push_back({{"points", pts}});
  }
  env["forbidden_regions"] = regions;
  j["environment"] = env;

  j["primitives"] = {{"count", s.primitives.count()},
                     {"delta_max", s.primitives.delta_max},
                     {"arc_length", s.primitives.arc_length},
                     {"sample_spacing", s.primitives.sample_spacing},
                     {"wheelbase", s.primitives.wheelbase}};
  j["sim"] = {{"Ts", s.sim.Ts},
              {"max_duration", s.sim.max_duration},
              {"deadlock_timeout", s.sim.deadlock_timeout},
              {"plant_substeps", s.sim.plant_substeps}};

  Json agents = Json::array();
  for (const AgentSpec& a : s.agents) {
    Json ja;
    ja["id"] = a.id;
    ja["params"] = {{"wheelbase", a.params.wheelbase},
                    {"length", a.params.length},
                    {"width", a.params.width},
                    {"delta_max", a.params.delta_max},
                    {"delta_rate_max", a.params.delta_rate_max},
                    {"a_min", a.params.a_min},
                    {"a_max", a.params.a_max},
                    {"v_min", a.params.v_min},
                    {"v_max", a.params.v_max},
                    {"safety_margin", a.params.safety_margin}};
    ja["start"] = {{"x", a.start.x},
                   {"y", a.start.y},
                   {"v", a.start.v},
                   {"theta", a.start.theta}};
    ja["goal"] = {{"center", {a.goal.center.x, a.goal.center.y}},
                  {"theta", a.goal.theta_G},
                  {"epsilon", a.goal.epsilon},
                  {"delta_theta", a.goal.delta_theta}};
    ja["v_desired"] = a.v_desired;
    ja["a_dec_comfort"] = a.a_dec_comfort;
    ja["replan_threshold"] = a.replan_threshold;
    ja["planner_weights"] = {{"w_hd", a.planner_weights.w_hd},
                             {"w_htheta", a.planner_weights.w_htheta},
                             {"w_hphi", a.planner_weights.w_hphi},
                             {"w_cd", a.planner_weights.w_cd},
                             {"w_cphi", a.planner_weights.w_cphi},
                             {"w_cc", a.planner_weights.w_cc},
                             {"d_safe", a.planner_weights.d_safe}};
    ja["mpc"] = {{"Nc", a.mpc_config.Nc},
                 {"w_perp", a.mpc_weights.w_perp},
                 {"w_par", a.mpc_weights.w_par},
                 {"q_theta", a.mpc_weights.q_thetav[0]},
                 {"q_v", a.mpc_weights.q_thetav[1]},
                 {"r_acc", a.mpc_weights.r[0]},
                 {"r_steer", a.mpc_weights.r[1]},
                 {"rd_acc", a.mpc_weights.r_d[0]},
                 {"rd_steer", a.mpc_weights.r_d[1]},
                 {"qf",
                  {a.mpc_weights.q_f[0], a.mpc_weights.q_f[1],
                   a.mpc_weights.q_f[2], a.mpc_weights.q_f[3]}}};
    ja["avoidance"] = {{"R_detect", a.avoidance.R_detect},
                       {"T_pred", a.avoidance.T_pred},
                       {"N_pred", a.avoidance.N_pred},
                       {"dt", a.avoidance.dt},
                       {"epsilon", a.avoidance.epsilon},
                       {"K_clear", a.avoidance.K_clear}};
    ja["reaction_delay_steps"] = a.reaction_delay_steps;
    ja["search_limits"] = {{"max_expansions", a.search_limits.max_expansions},
                           {"max_seconds", a.search_limits.max_seconds}};
    agents.push_back(ja);
  }
  j["agents"] = agents;
  return j.dump(2) + "\n";
}

namespace {

AgentStatus status_from_string(const std::string& s) {
  if (s == "Running") return AgentStatus::Running;
  if (s == "Arrived") return AgentStatus::Arrived;
  if (s == "Collided") return AgentStatus::Collided;
  if (s == "Deadlocked") return AgentStatus::Deadlocked;
  throw ScenarioError("unknown status '" + s + "' in trajectory");
}

}  // namespace

std::string format_trajectory(const TrajectoryLog& log) {
  std::string out =
      "t,agent_id,x,y,v,theta,a,delta,deviation_m,conflict_flag,status\n";
  char buf[256];
  for (const LogRow& r : log.rows) {
    std::snprintf(buf, sizeof(buf),
                  "%.6f,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%s\n", r.t,
                  r.agent_id, r.x, r.y, r.v, r.theta, r.a, r.delta,
                  r.deviation_m, r.conflict_flag, to_string(r.status));
    out += buf;
  }
  return out;
}

void write_trajectory(const TrajectoryLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError("cannot open output file: " + path);
  out << format_trajectory(log);
}

TrajectoryLog read_trajectory(const std::string& text) {
  TrajectoryLog log;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ScenarioError("empty trajectory text");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    LogRow r;
    char status[32] = {0};
    const int n = std::sscanf(
        line.c_str(), "%lf,%d,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%d,%31s", &r.t,
        &r.agent_id, &r.x, &r.y, &r.v, &r.theta, &r.a, &r.delta,
        &r.deviation_m, &r.conflict_flag, status);
    if (n != 11) throw ScenarioError("malformed trajectory row: " + line);
    r.status = status_from_string(status);
    log.rows.push_back(r);
  }
  return log;
}

MetricsReport compute_metrics(const TrajectoryLog& log,
                              const Scenario& scenario) {
  MetricsReport rep;
  std::map<int, VehicleParams> params;
  for (const AgentSpec& a : scenario.agents) {
    params[a.id] = a.params;
    rep.agents[a.id] = {};
  }

  std::map<int, long> row_counts;
  std::map<int, double> dev_sums;
  std::map<int, int> prev_flag;

  // rows arrive grouped by time step; collect each step's states for the
  // clearance computation
  std::map<int, LogRow> current;
  double current_t = -1.0;

  auto flush_step = [&]() {
    if (current.size() < 2) return;
    for (auto it = current.begin(); it != current.end(); ++it) {
      for (auto jt = std::next(it); jt != current.end(); ++jt) {
        const Footprint fa = footprint_at(it->second.x, it->second.y,
                                          it->second.theta, params[it->first]);
        const Footprint fb = footprint_at(jt->second.x, jt->second.y,
                                          jt->second.theta, params[jt->first]);
        double gap = kInf;
        for (const Circle* ca : {&fa.front, &fa.rear}) {
          for (const Circle* cb : {&fb.front, &fb.rear}) {
            gap = std::min(gap, (ca->center - cb->center).norm() - ca->radius -
                                    cb->radius);
          }
        }
        rep.min_clearance = std::min(rep.min_clearance, gap);
        auto& ma = rep.agents[it->first];
        auto& mb = rep.agents[jt->first];
        ma.min_clearance = std::min(ma.min_clearance, gap);
        mb.min_clearance = std::min(mb.min_clearance, gap);
      }
    }
  };

  for (const LogRow& r : log.rows) {
    if (r.t != current_t) {
      flush_step();
      current.clear();
      current_t = r.t;
      ++rep.steps;
    }
    current[r.agent_id] = r;

    AgentMetrics& m = rep.agents[r.agent_id];
    m.max_deviation = std::max(m.max_deviation, r.deviation_m);
    dev_sums[r.agent_id] += r.deviation_m;
    ++row_counts[r.agent_id];
    m.v_peak = std::max(m.v_peak, r.v);
    if (r.conflict_flag > 0) {
      ++m.conflict_steps;
      if (prev_flag[r.agent_id] == 0) ++m.stop_episodes;
      if (r.conflict_flag >= 2) m.unavoidable_flagged = true;
    }
    prev_flag[r.agent_id] = r.conflict_flag;
    if (r.status == AgentStatus::Arrived && !m.arrived) {
      m.arrived = true;
      m.travel_time = r.t;
    }
    if (r.status == AgentStatus::Collided) m.collided = true;
    if (r.status == AgentStatus::Deadlocked) m.deadlocked = true;
    rep.sim_seconds = std::max(rep.sim_seconds, r.t);
  }
  flush_step();

  for (auto& [id, m] : rep.agents) {
    if (row_counts[id] > 0) m.mean_deviation = dev_sums[id] / row_counts[id];
  }
  return rep;
}

void attach_run_stats(MetricsReport& report, const RunResult& result) {
  report.run_stats = result.stats;
  report.wall_seconds_per_step = result.compute_seconds_per_step();
}

std::string format_metrics(const MetricsReport& rep) {
  std::ostringstream out;
  out << "steps = " << rep.steps << "\n";
  out << "sim_seconds = " << rep.sim_seconds << "\n";
  if (rep.min_clearance < kInf) {
    out << "min_clearance_m = " << rep.min_clearance << "\n";
  }
  if (rep.wall_seconds_per_step > 0.0) {
    out << "wall_seconds_per_step = " << rep.wall_seconds_per_step << "\n";
  }
  for (const auto& [id, m] : rep.agents) {
    out << "[agent " << id << "]\n";
    out << "  max_deviation_m = " << m.max_deviation << "\n";
    out << "  mean_deviation_m = " << m.mean_deviation << "\n";
    out << "  v_peak = " << m.v_peak << "\n";
    out << "  travel_time_s = " << m.travel_time << "\n";
    if (m.min_clearance < kInf) {
      out << "  min_clearance_m = " << m.min_clearance << "\n";
    }
    out << "  stop_episodes = " << m.stop_episodes << "\n";
    out << "  conflict_steps = " << m.conflict_steps << "\n";
    out << "  arrived = " << (m.arrived ? 1 : 0) << "\n";
    out << "  collided = " << (m.collided ? 1 : 0) << "\n";
    out << "  deadlocked = " << (m.deadlocked ? 1 : 0) << "\n";
    out << "  unavoidable = " << (m.unavoidable_flagged ? 1 : 0) << "\n";
    auto it = rep.run_stats.find(id);
    if (it != rep.run_stats.end()) {
      out << "  nodes_expanded = " << it->second.nodes_expanded << "\n";
      out << "  plan_seconds = " << it->second.plan_seconds << "\n";
      out << "  replans = " << it->second.replans << "\n";
      out << "  controller_mean_ms = "
          << (it->second.controller_steps > 0
                  ? 1000.0 * it->second.controller_seconds_total /
                        it->second.controller_steps
                  : 0.0)
          << "\n";
      out << "  controller_max_ms = " << 1000.0 * it->second.controller_seconds_max
          << "\n";
    }
  }
  return out.str();
}

}  // namespace junction
