#include "junction/reference_trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace junction {

namespace {

// index of the segment [i, i+1] containing arc length s
size_t segment_index(const std::vector<Waypoint>& wps, double s) {
  auto it = std::upper_bound(
      wps.begin(), wps.end(), s,
      [](double value, const Waypoint& w) { return value < w.s; });
  if (it == wps.begin()) return 0;
  size_t i = static_cast<size_t>(it - wps.begin()) - 1;
  return std::min(i, wps.size() - 2);
}

}  // namespace

Pose ReferenceTrajectory::pose_at(double s) const {
  if (waypoints.size() == 1) return waypoints.front().pose;
  s = std::clamp(s, 0.0, total_length());
  const size_t i = segment_index(waypoints, s);
  const Waypoint& a = waypoints[i];
  const Waypoint& b = waypoints[i + 1];
  const double span = b.s - a.s;
  const double t = span > 0.0 ? (s - a.s) / span : 0.0;
  Pose out;
  out.x = a.pose.x + t * (b.pose.x - a.pose.x);
  out.y = a.pose.y + t * (b.pose.y - a.pose.y);
  out.theta =
      wrap_to_pi(a.pose.theta + t * wrap_to_pi(b.pose.theta - a.pose.theta));
  return out;
}

double ReferenceTrajectory::v_at(double s) const {
  if (truncated_at && s >= *truncated_at) return 0.0;
  if (waypoints.size() == 1) return waypoints.front().v_ref;
  if (s <= 0.0) return waypoints.front().v_ref;
  if (s >= total_length()) return waypoints.back().v_ref;
  const size_t i = segment_index(waypoints, s);
  const Waypoint& a = waypoints[i];
  const Waypoint& b = waypoints[i + 1];
  const double span = b.s - a.s;
  const double t = span > 0.0 ? (s - a.s) / span : 0.0;
  return a.v_ref + t * (b.v_ref - a.v_ref);
}

double ReferenceTrajectory::project(const Point2& p, double s_min) const {
  if (waypoints.size() == 1) return waypoints.front().s;
  // nearest waypoint at or after s_min (ties keep the smaller s)
  size_t best_i = 0;
  double best_d = kInf;
  for (size_t i = 0; i < waypoints.size(); ++i) {
    if (waypoints[i].s < s_min) continue;
    const double d =
        std::hypot(p.x - waypoints[i].pose.x, p.y - waypoints[i].pose.y);
    if (d < best_d - 1e-12) {
      best_d = d;
      best_i = i;
    }
  }
  // refine on the two adjacent segments
  double best_s = waypoints[best_i].s;
  double best_dist = best_d;
  for (size_t i = best_i > 0 ? best_i - 1 : 0;
       i + 1 < waypoints.size() && i <= best_i; ++i) {
    const Segment seg{{waypoints[i].pose.x, waypoints[i].pose.y},
                      {waypoints[i + 1].pose.x, waypoints[i + 1].pose.y}};
    if ((seg.b - seg.a).squared_norm() < 1e-18) continue;
    const auto proj = project_point_to_segment(p, seg);
    const double d = (p - proj.point).norm();
    const double s =
        waypoints[i].s + proj.t * (waypoints[i + 1].s - waypoints[i].s);
    if (d < best_dist - 1e-12 && s >= s_min) {
      best_dist = d;
      best_s = s;
    }
  }
  return best_s;
}

double ReferenceTrajectory::distance_to(const Point2& p) const {
  if (waypoints.size() == 1) {
    return std::hypot(p.x - waypoints.front().pose.x,
                      p.y - waypoints.front().pose.y);
  }
  double best = kInf;
  for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const Segment seg{{waypoints[i].pose.x, waypoints[i].pose.y},
                      {waypoints[i + 1].pose.x, waypoints[i + 1].pose.y}};
    if ((seg.b - seg.a).squared_norm() < 1e-18) continue;
    best = std::min(best, point_segment_distance(p, seg));
  }
  return best;
}

ReferenceTrajectory assign_speed_profile(const PlannedPath& path,
                                         double v_desired, double a_max,
                                         double a_dec_comfort) {
  ReferenceTrajectory ref;
  ref.v_desired = v_desired;
  if (path.dense_poses.empty()) return ref;

  double s = 0.0;
  ref.waypoints.reserve(path.dense_poses.size());
  for (size_t i = 0; i < path.dense_poses.size(); ++i) {
    if (i > 0) {
      const Pose& a = path.dense_poses[i - 1];
      const Pose& b = path.dense_poses[i];
      const double step = std::hypot(b.x - a.x, b.y - a.y);
      if (step < 1e-12) continue;  // drop duplicate poses
      s += step;
    }
    ref.waypoints.push_back({path.dense_poses[i], 0.0, s});
  }

  const double s_total = ref.waypoints.back().s;
  for (Waypoint& w : ref.waypoints) {
    const double v_acc = std::sqrt(std::max(0.0, 2.0 * a_max * w.s));
    const double v_dec =
        std::sqrt(std::max(0.0, 2.0 * a_dec_comfort * (s_total - w.s)));
    w.v_ref = std::min({v_acc, v_desired, v_dec});
  }
  return ref;
}

namespace {

// Integrates ds/dt = v_ref(s) over dt. A profile that starts at rest would
// stay pinned at v(0) = 0 under plain substepping; the launch kick looks
// slightly ahead and only fires where the profile rises.
double advance_arc(const ReferenceTrajectory& ref, double s, double dt) {
  constexpr int kSubsteps = 10;
  const double h = dt / kSubsteps;
  const double end = ref.total_length();
  double cur = s;
  for (int k = 0; k < kSubsteps; ++k) {
    double v = ref.v_at(cur);
    if (v <= 1e-9) {
      const double ahead = ref.v_at(std::min(cur + 0.05, end));
      if (ahead <= 1e-9) break;  // genuine stop point or path end
      v = 0.5 * ahead;
    }
    cur = std::min(cur + v * h, end);
  }
  return cur;
}

}  // namespace

std::vector<ReferenceSample> sample_reference(const ReferenceTrajectory& ref,
                                              const VehicleState& current,
                                              int Nc, double Ts,
                                              double s_hint) {
  std::vector<ReferenceSample> out;
  out.reserve(Nc + 1);
  const double back_window = 2.0;
  double s =
      ref.project(current.position(), std::max(0.0, s_hint - back_window));

  double prev_theta = current.theta;
  for (int k = 0; k <= Nc; ++k) {
    const Pose pose = ref.pose_at(s);
    ReferenceSample sample;
    sample.x = pose.x;
    sample.y = pose.y;
    sample.v = ref.v_at(s);
    sample.theta = prev_theta + wrap_to_pi(pose.theta - prev_theta);
    sample.s = s;
    prev_theta = sample.theta;
    out.push_back(sample);
    s = advance_arc(ref, s, Ts);
  }
  return out;
}

ReferenceTrajectory truncate_for_stop(const ReferenceTrajectory& ref,
                                      double s_now, double s_stop) {
  ReferenceTrajectory out = ref;
  const double stop_at = s_now + std::max(0.0, s_stop);
  const double v0 = ref.v_at(s_now);
  for (Waypoint& w : out.waypoints) {
    if (w.s <= s_now) continue;
    if (w.s >= stop_at || s_stop <= 0.0 || v0 <= 0.0) {
      w.v_ref = 0.0;
      continue;
    }
    // constant-deceleration ramp in the arc domain
    const double ramp = v0 * std::sqrt(1.0 - (w.s - s_now) / s_stop);
    w.v_ref = std::min(w.v_ref, ramp);
  }
  out.truncated_at =
      out.truncated_at ? std::min(*out.truncated_at, stop_at) : stop_at;
  return out;
}

bool needs_replan(const ReferenceTrajectory& ref, const VehicleState& current,
                  double threshold_m) {
  if (ref.empty()) return true;
  return ref.distance_to(current.position()) > threshold_m;
}

}  // namespace junction
