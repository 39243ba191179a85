#include "junction/vehicle_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace junction {

namespace {

void check_steering(double delta) {
  if (!(std::abs(delta) < M_PI / 2.0)) {
    throw std::invalid_argument("steering angle at or beyond pi/2");
  }
}

Eigen::Vector4d f(const Eigen::Vector4d& x, const ControlInput& u, double L) {
  const double v = x[2];
  const double th = x[3];
  return {v * std::cos(th), v * std::sin(th), u.a, v / L * std::tan(u.delta)};
}

}  // namespace

Eigen::Vector4d derivative(const VehicleState& s, const ControlInput& u,
                           const VehicleParams& p) {
  check_steering(u.delta);
  return f(s.as_vector(), u, p.wheelbase);
}

LinearModel linearize(const VehicleState& op_state, const ControlInput& op_input,
                      const VehicleParams& p) {
  check_steering(op_input.delta);
  const double v = op_state.v;
  const double th = op_state.theta;
  const double de = op_input.delta;
  const double L = p.wheelbase;
  const double sec2 = 1.0 / (std::cos(de) * std::cos(de));

  LinearModel m;
  m.A.setZero();
  m.A(0, 2) = std::cos(th);
  m.A(0, 3) = -v * std::sin(th);
  m.A(1, 2) = std::sin(th);
  m.A(1, 3) = v * std::cos(th);
  m.A(3, 2) = std::tan(de) / L;

  m.B.setZero();
  m.B(2, 0) = 1.0;
  m.B(3, 1) = v * sec2 / L;

  m.d << v * std::sin(th) * th, -v * std::cos(th) * th, 0.0,
      -v * de * sec2 / L;

  m.v_op = v;
  m.theta_op = th;
  m.delta_op = de;
  return m;
}

DiscreteModel discretize(const LinearModel& m, double Ts) {
  DiscreteModel d;
  d.A = Eigen::Matrix4d::Identity() + m.A * Ts;
  d.B = m.B * Ts;
  d.d = m.d * Ts;
  d.Ts = Ts;
  return d;
}

VehicleState step_plant(const VehicleState& s, const ControlInput& u,
                        const VehicleParams& p, double dt) {
  ControlInput uc;
  uc.a = std::clamp(u.a, p.a_min, p.a_max);
  uc.delta = std::clamp(u.delta, -p.delta_max, p.delta_max);

  const double L = p.wheelbase;
  const Eigen::Vector4d x0 = s.as_vector();
  const Eigen::Vector4d k1 = f(x0, uc, L);
  const Eigen::Vector4d k2 = f(x0 + 0.5 * dt * k1, uc, L);
  const Eigen::Vector4d k3 = f(x0 + 0.5 * dt * k2, uc, L);
  const Eigen::Vector4d k4 = f(x0 + dt * k3, uc, L);
  const Eigen::Vector4d x1 = x0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

  VehicleState out;
  out.x = x1[0];
  out.y = x1[1];
  out.v = std::clamp(x1[2], p.v_min, p.v_max);
  out.theta = wrap_to_pi(x1[3]);
  return out;
}

Footprint footprint_at(double x, double y, double theta,
                       const VehicleParams& p) {
  const double r = p.footprint_radius();
  const double cx = std::cos(theta);
  const double sy = std::sin(theta);
  const double sr = 0.25 * p.wheelbase;
  const double sf = 0.75 * p.wheelbase;
  Footprint fp;
  fp.rear = {{x + sr * cx, y + sr * sy}, r};
  fp.front = {{x + sf * cx, y + sf * sy}, r};
  return fp;
}

}  // namespace junction
