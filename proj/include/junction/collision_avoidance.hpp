#ifndef JUNCTION_COLLISION_AVOIDANCE_HPP
#define JUNCTION_COLLISION_AVOIDANCE_HPP

#include <optional>
#include <span>
#include <vector>

#include "junction/reference_trajectory.hpp"
#include "junction/vehicle_model.hpp"

namespace junction {

struct AvoidanceConfig {
  double R_detect{50.0};
  double T_pred{3.0};
  int N_pred{30};  // N_pred * dt == T_pred, N_pred > the MPC horizon
  double dt{0.1};
  double epsilon{0.5};       // conflict margin, shared with the planner margin
  int K_clear{5};            // conflict-free steps before a stop is lifted
  bool use_prefilter{true};  // analytic early-exit on straight segments
};

struct PredictedStep {
  Pose pose;
  double v{0.0};
  Footprint footprint;
  double s{0.0};  // ego only: arc length along the reference
};

struct PredictedPath {
  int agent_id{-1};
  std::vector<PredictedStep> steps;  // N_pred + 1 entries
};

struct ConflictReport {
  int step_index{0};
  double time_to_conflict{0.0};
  double s_c{0.0};  // ego arc length at the conflict step
  int agent_id{-1};
};

/// Constant speed, constant steering forward rollout of an observed vehicle.
PredictedPath predict_other(int agent_id, const VehicleState& observed,
                            double observed_delta, const VehicleParams& params,
                            const AvoidanceConfig& cfg);

/// Ego rollout along the reference: speed ramps toward the profile speed at
/// a_max and never exceeds it, so a truncated reference halts the
/// prediction at its stop point. Poses are read off the reference geometry.
PredictedPath predict_ego(const VehicleState& state,
                          const ReferenceTrajectory& ref,
                          const VehicleParams& params,
                          const AvoidanceConfig& cfg, double s_now);

/// Earliest predicted footprint overlap (radii inflated by epsilon/2 each)
/// across all agents; ties resolve to the lower agent id. The analytic
/// closing-time test is applied as an early exit where both rollouts are
/// straight constant-speed lines, where it is exact.
std::optional<ConflictReport> detect_conflict(
    const PredictedPath& ego, std::span<const PredictedPath> others,
    const AvoidanceConfig& cfg);

/// Shortest distance needed to stop from v0 under the acceleration limit.
double min_stop_distance(double v0, double a_limit);

struct StopPlan {
  ReferenceTrajectory ref;
  bool applied{false};      // false when the conflict lies behind the ego
  bool unavoidable{false};  // deceleration limit forces an overshoot
  double s_stop{0.0};
  double tau_star{0.0};
  double decel{0.0};
};

/// Minimum-effort stop before the conflict point: stop distance is capped
/// by both the conflict distance (minus the margin) and the predicted time
/// to conflict; the implied constant deceleration is clamped to a_min.
StopPlan plan_stop(const ConflictReport& report, const VehicleState& ego_state,
                   double s_now, const ReferenceTrajectory& ref,
                   const VehicleParams& params, const AvoidanceConfig& cfg);

/// Steering estimate from two observed headings: tan(delta) = L dtheta / (v dt).
double estimate_steering(const VehicleState& prev, const VehicleState& cur,
                         double dt, const VehicleParams& params);

}  // namespace junction

#endif  // JUNCTION_COLLISION_AVOIDANCE_HPP
