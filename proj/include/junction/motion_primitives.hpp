#ifndef JUNCTION_MOTION_PRIMITIVES_HPP
#define JUNCTION_MOTION_PRIMITIVES_HPP

#include <vector>

#include "junction/geometry.hpp"

namespace junction {

struct Pose {
  double x{0.0};
  double y{0.0};
  double theta{0.0};
};

/// A constant-steering arc integrated at unit speed in the start frame.
/// local_poses[0] is always (0, 0, 0); collision_points are the sampled
/// positions used for validity checks.
struct MotionPrimitive {
  int id{0};
  double delta{0.0};       // rad
  double arc_length{0.0};  // m
  std::vector<Pose> local_poses;
  std::vector<Point2> collision_points;
  Pose end_pose;
};

/// Steering values are uniform on [-delta_max, +delta_max]; count is odd so
/// the straight primitive is always present.
struct PrimitiveSet {
  std::vector<MotionPrimitive> primitives;
  double delta_max{0.0};
  double arc_length{0.0};
  double sample_spacing{0.0};
  double wheelbase{0.0};

  int count() const { return static_cast<int>(primitives.size()); }
};

/// Integrates the unit-speed pose kinematics for each steering value with
/// RK4 substeps no longer than 0.01 m. Rejects even n and delta_max >= pi/2.
PrimitiveSet generate_set(int n, double delta_max, double arc_length,
                          double sample_spacing, double wheelbase);

/// Rigid-body transform of a local pose by rotation `at.theta` then
/// translation (at.x, at.y); the heading offset is renormalized.
Pose compose(const Pose& at, const Pose& local);

struct GlobalPrimitive {
  std::vector<Pose> poses;
  std::vector<Point2> collision_points;
  Pose end_pose;
};

GlobalPrimitive transform_to_global(const MotionPrimitive& m, const Pose& at);

}  // namespace junction

#endif  // JUNCTION_MOTION_PRIMITIVES_HPP
