#include "junction/collision_avoidance.hpp"

#include <algorithm>
#include <cmath>

namespace junction {

namespace {

// RK4 step of the bicycle model with a = 0 and fixed steering. No speed
// clamp: observed vehicles may be faster than the ego's own limits.
VehicleState coast_step(const VehicleState& s, double delta, double L,
                        double dt) {
  const double w = std::tan(delta) / L;
  const double v = s.v;
  auto fx = [&](double th) { return v * std::cos(th); };
  auto fy = [&](double th) { return v * std::sin(th); };
  const double k1x = fx(s.theta), k1y = fy(s.theta);
  const double th2 = s.theta + 0.5 * dt * v * w;
  const double k2x = fx(th2), k2y = fy(th2);
  const double th4 = s.theta + dt * v * w;
  const double k4x = fx(th4), k4y = fy(th4);

  VehicleState out = s;
  out.x = s.x + dt / 6.0 * (k1x + 4.0 * k2x + k4x);
  out.y = s.y + dt / 6.0 * (k1y + 4.0 * k2y + k4y);
  out.theta = wrap_to_pi(s.theta + dt * v * w);
  return out;
}

Footprint inflated(const Footprint& f, double extra) {
  Footprint out = f;
  out.front.radius += extra;
  out.rear.radius += extra;
  return out;
}

// true when the rollout is a straight constant-speed line
bool straight_constant(const PredictedPath& p) {
  if (p.steps.size() < 2) return false;
  const double th0 = p.steps.front().pose.theta;
  const double v0 = p.steps.front().v;
  for (const auto& st : p.steps) {
    if (std::abs(wrap_to_pi(st.pose.theta - th0)) > 1e-9) return false;
    if (std::abs(st.v - v0) > 1e-9) return false;
  }
  return true;
}

Point2 body_center(const PredictedStep& st) {
  return {(st.footprint.front.center.x + st.footprint.rear.center.x) / 2.0,
          (st.footprint.front.center.y + st.footprint.rear.center.y) / 2.0};
}

double bounding_radius(const PredictedStep& st) {
  const Point2 c = body_center(st);
  const double arm = (st.footprint.front.center - c).norm();
  return arm + st.footprint.front.radius;
}

}  // namespace

PredictedPath predict_other(int agent_id, const VehicleState& observed,
                            double observed_delta, const VehicleParams& params,
                            const AvoidanceConfig& cfg) {
  PredictedPath path;
  path.agent_id = agent_id;
  path.steps.reserve(cfg.N_pred + 1);
  const double delta =
      std::clamp(observed_delta, -params.delta_max, params.delta_max);
  VehicleState s = observed;
  for (int k = 0; k <= cfg.N_pred; ++k) {
    PredictedStep st;
    st.pose = {s.x, s.y, s.theta};
    st.v = s.v;
    st.footprint = footprint_at(s.x, s.y, s.theta, params);
    path.steps.push_back(st);
    s = coast_step(s, delta, params.wheelbase, cfg.dt);
  }
  return path;
}

PredictedPath predict_ego(const VehicleState& state,
                          const ReferenceTrajectory& ref,
                          const VehicleParams& params,
                          const AvoidanceConfig& cfg, double s_now) {
  PredictedPath path;
  path.agent_id = -1;
  path.steps.reserve(cfg.N_pred + 1);
  double s = s_now;
  double v = std::max(0.0, state.v);
  for (int k = 0; k <= cfg.N_pred; ++k) {
    const Pose pose = ref.empty() ? Pose{state.x, state.y, state.theta}
                                  : ref.pose_at(s);
    PredictedStep st;
    st.pose = pose;
    st.v = v;
    st.s = s;
    st.footprint = footprint_at(pose.x, pose.y, pose.theta, params);
    path.steps.push_back(st);
    if (ref.empty()) continue;
    // ramp toward the profile, looking slightly ahead so a rising profile
    // can launch from rest; decelerating to the profile is immediate
    const double lookahead = std::max(v, 1.0) * cfg.dt;
    const double target =
        std::max(ref.v_at(s), ref.v_at(std::min(s + lookahead, ref.total_length())));
    v = std::min(v + params.a_max * cfg.dt, target);
    s = std::min(s + v * cfg.dt, ref.total_length());
  }
  return path;
}

std::optional<ConflictReport> detect_conflict(
    const PredictedPath& ego, std::span<const PredictedPath> others,
    const AvoidanceConfig& cfg) {
  std::optional<ConflictReport> best;
  const bool ego_straight = cfg.use_prefilter && straight_constant(ego);
  const size_t n = ego.steps.size();

  for (const PredictedPath& other : others) {
    if (other.steps.size() != n) continue;

    if (ego_straight && straight_constant(other)) {
      // both rollouts are exact constant-velocity lines: the analytic root
      // is a sound early exit
      const Point2 pe = body_center(ego.steps.front());
      const Point2 po = body_center(other.steps.front());
      const double the = ego.steps.front().pose.theta;
      const double tho = other.steps.front().pose.theta;
      const Point2 ve{ego.steps.front().v * std::cos(the),
                      ego.steps.front().v * std::sin(the)};
      const Point2 vo{other.steps.front().v * std::cos(tho),
                      other.steps.front().v * std::sin(tho)};
      const double r_sum =
          bounding_radius(ego.steps.front()) + bounding_radius(other.steps.front());
      const auto tau =
          analytic_closing_time(po - pe, vo - ve, r_sum, cfg.epsilon);
      if (!tau.has_value() || *tau > cfg.T_pred + cfg.dt) continue;
    }

    for (size_t k = 0; k < n; ++k) {
      if (best && static_cast<int>(k) >= best->step_index) break;
      const Footprint fe = inflated(ego.steps[k].footprint, cfg.epsilon / 2.0);
      const Footprint fo = inflated(other.steps[k].footprint, cfg.epsilon / 2.0);
      if (footprints_overlap(fe, fo)) {
        const int ki = static_cast<int>(k);
        if (!best || ki < best->step_index) {
          best = ConflictReport{ki, ki * cfg.dt, ego.steps[k].s,
                                other.agent_id};
        }
        break;
      }
    }
  }
  return best;
}

double min_stop_distance(double v0, double a_limit) {
  return v0 * v0 / (2.0 * std::abs(a_limit));
}

StopPlan plan_stop(const ConflictReport& report, const VehicleState& ego_state,
                   double s_now, const ReferenceTrajectory& ref,
                   const VehicleParams& params, const AvoidanceConfig& cfg) {
  StopPlan plan;
  plan.ref = ref;

  if (report.s_c < s_now) return plan;  // conflict lies behind; ignore

  const double v0 = std::max(0.0, ego_state.v);
  if (v0 < 1e-3) {
    // already at rest: hold the reference at the current arc length
    plan.ref = truncate_for_stop(ref, s_now, 0.0);
    plan.applied = true;
    return plan;
  }

  const double s_required = std::max(0.0, report.s_c - cfg.epsilon - s_now);
  const double planned = std::min(s_required, 0.5 * v0 * report.time_to_conflict);
  const double s_dyn = min_stop_distance(v0, params.a_min);

  if (planned < s_dyn - 1e-9) {
    plan.unavoidable = true;  // the feasible stop set is empty
    plan.s_stop = s_dyn;
  } else {
    plan.s_stop = planned;
  }
  plan.tau_star = 2.0 * plan.s_stop / v0;
  plan.decel = plan.tau_star > 0.0 ? -v0 / plan.tau_star : params.a_min;
  plan.ref = truncate_for_stop(ref, s_now, plan.s_stop);
  plan.applied = true;
  return plan;
}

double estimate_steering(const VehicleState& prev, const VehicleState& cur,
                         double dt, const VehicleParams& params) {
  if (dt <= 0.0) return 0.0;
  const double v = std::max(std::abs(cur.v), std::abs(prev.v));
  if (v < 0.5) return 0.0;
  const double theta_rate = wrap_to_pi(cur.theta - prev.theta) / dt;
  const double delta = std::atan(params.wheelbase * theta_rate / v);
  return std::clamp(delta, -params.delta_max, params.delta_max);
}

}  // namespace junction
