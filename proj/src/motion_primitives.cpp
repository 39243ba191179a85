#include "junction/motion_primitives.hpp"

#include <cmath>
#include <stdexcept>

namespace junction {

namespace {

// Unit-speed pose kinematics: dx/ds = cos(th), dy/ds = sin(th),
// dth/ds = tan(delta)/L.
Pose rk4_arc_step(const Pose& q, double tan_delta_over_L, double h) {
  auto fx = [&](double th) { return std::cos(th); };
  auto fy = [&](double th) { return std::sin(th); };
  const double w = tan_delta_over_L;

  const double k1x = fx(q.theta), k1y = fy(q.theta);
  const double th2 = q.theta + 0.5 * h * w;
  const double k2x = fx(th2), k2y = fy(th2);
  const double k3x = k2x, k3y = k2y;  // theta rate is state-independent
  const double th4 = q.theta + h * w;
  const double k4x = fx(th4), k4y = fy(th4);

  Pose out;
  out.x = q.x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  out.y = q.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
  out.theta = q.theta + h * w;
  return out;
}

MotionPrimitive integrate_primitive(int id, double delta, double arc_length,
                                    double sample_spacing, double wheelbase) {
  MotionPrimitive m;
  m.id = id;
  m.delta = delta;
  m.arc_length = arc_length;

  const double w = std::tan(delta) / wheelbase;
  const int n_samples = static_cast<int>(std::ceil(arc_length / sample_spacing));
  constexpr double kMaxSubstep = 0.01;  // m

  Pose q{0.0, 0.0, 0.0};
  m.local_poses.push_back(q);
  m.collision_points.push_back({q.x, q.y});
  for (int i = 1; i <= n_samples; ++i) {
    const double s_target = arc_length * static_cast<double>(i) / n_samples;
    const double s_prev = arc_length * static_cast<double>(i - 1) / n_samples;
    const double span = s_target - s_prev;
    const int substeps = std::max(1, static_cast<int>(std::ceil(span / kMaxSubstep)));
    const double h = span / substeps;
    for (int j = 0; j < substeps; ++j) q = rk4_arc_step(q, w, h);
    m.local_poses.push_back(q);
    m.collision_points.push_back({q.x, q.y});
  }
  m.end_pose = m.local_poses.back();
  return m;
}

}  // namespace

PrimitiveSet generate_set(int n, double delta_max, double arc_length,
                          double sample_spacing, double wheelbase) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("primitive count must be odd and >= 3");
  }
  if (!(delta_max > 0.0 && delta_max < M_PI / 2.0)) {
    throw std::invalid_argument("delta_max must lie in (0, pi/2)");
  }
  if (!(arc_length > 0.0) || !(sample_spacing > 0.0) ||
      sample_spacing > arc_length) {
    throw std::invalid_argument("need 0 < sample_spacing <= arc_length");
  }
  if (!(wheelbase > 0.0)) throw std::invalid_argument("wheelbase must be > 0");

  PrimitiveSet set;
  set.delta_max = delta_max;
  set.arc_length = arc_length;
  set.sample_spacing = sample_spacing;
  set.wheelbase = wheelbase;
  set.primitives.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double delta = -delta_max + 2.0 * delta_max * i / (n - 1);
    set.primitives.push_back(
        integrate_primitive(i, delta, arc_length, sample_spacing, wheelbase));
  }
  return set;
}

Pose compose(const Pose& at, const Pose& local) {
  const double c = std::cos(at.theta);
  const double s = std::sin(at.theta);
  Pose out;
  out.x = at.x + c * local.x - s * local.y;
  out.y = at.y + s * local.x + c * local.y;
  out.theta = wrap_to_pi(at.theta + local.theta);
  return out;
}

GlobalPrimitive transform_to_global(const MotionPrimitive& m, const Pose& at) {
  GlobalPrimitive g;
  g.poses.reserve(m.local_poses.size());
  g.collision_points.reserve(m.collision_points.size());
  const double c = std::cos(at.theta);
  const double s = std::sin(at.theta);
  for (const Pose& q : m.local_poses) {
    g.poses.push_back({at.x + c * q.x - s * q.y, at.y + s * q.x + c * q.y,
                       wrap_to_pi(at.theta + q.theta)});
  }
  for (const Point2& p : m.collision_points) {
    g.collision_points.push_back(
        {at.x + c * p.x - s * p.y, at.y + s * p.x + c * p.y});
  }
  g.end_pose = g.poses.back();
  return g;
}

}  // namespace junction
