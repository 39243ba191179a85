#ifndef JUNCTION_REFERENCE_TRAJECTORY_HPP
#define JUNCTION_REFERENCE_TRAJECTORY_HPP

#include <optional>
#include <vector>

#include "junction/global_planner.hpp"
#include "junction/vehicle_model.hpp"

namespace junction {

struct Waypoint {
  Pose pose;
  double v_ref{0.0};
  double s{0.0};  // cumulative arc length
};

/// Speed-annotated, arc-length-indexed reference. Geometry never changes
/// after construction; stop truncation only lowers reference speeds.
struct ReferenceTrajectory {
  std::vector<Waypoint> waypoints;
  double v_desired{0.0};
  std::optional<double> truncated_at;

  bool empty() const { return waypoints.empty(); }
  double total_length() const {
    return waypoints.empty() ? 0.0 : waypoints.back().s;
  }

  /// Pose at arc length s (clamped to the ends, linear interpolation).
  Pose pose_at(double s) const;

  /// Reference speed at arc length s (linear interpolation).
  double v_at(double s) const;

  /// Arc length of the closest point of the reference polyline, searched
  /// from s_min onward (pass 0 for a global projection). Ties resolve to
  /// the smaller arc length.
  double project(const Point2& p, double s_min = 0.0) const;

  /// Distance from p to the reference polyline.
  double distance_to(const Point2& p) const;
};

/// One time-parameterized reference state for the controller window.
struct ReferenceSample {
  double x{0.0};
  double y{0.0};
  double v{0.0};
  double theta{0.0};  // unwrapped against the preceding sample
  double s{0.0};
};

/// Trapezoidal profile v(s) = min(sqrt(2 a_max s), v_desired,
/// sqrt(2 a_dec (s_total - s))); both endpoints are zero. Short paths give
/// a triangular profile.
ReferenceTrajectory assign_speed_profile(const PlannedPath& path,
                                         double v_desired, double a_max,
                                         double a_dec_comfort);

/// Nc+1 reference states starting at the arc-length projection of the
/// current position (searched from s_hint), advanced by integrating the
/// reference profile over steps of Ts. Headings are unwrapped, anchored at
/// the current state; past the end the final waypoint repeats at v = 0.
std::vector<ReferenceSample> sample_reference(const ReferenceTrajectory& ref,
                                              const VehicleState& current,
                                              int Nc, double Ts,
                                              double s_hint = 0.0);

/// Constant-deceleration stop ramp: v goes from the profile speed at s_now
/// to zero over [s_now, s_now + s_stop]; zero beyond. Speeds only ever
/// decrease, so repeated truncation keeps the earliest stop.
ReferenceTrajectory truncate_for_stop(const ReferenceTrajectory& ref,
                                      double s_now, double s_stop);

/// True iff the perpendicular distance to the reference exceeds the
/// threshold (strictly).
bool needs_replan(const ReferenceTrajectory& ref, const VehicleState& current,
                  double threshold_m);

}  // namespace junction

#endif  // JUNCTION_REFERENCE_TRAJECTORY_HPP
