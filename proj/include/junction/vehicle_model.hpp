#ifndef JUNCTION_VEHICLE_MODEL_HPP
#define JUNCTION_VEHICLE_MODEL_HPP

#include <Eigen/Dense>

#include "junction/geometry.hpp"

namespace junction {

/// State ordering is [x, y, v, theta] everywhere.
struct VehicleState {
  double x{0.0};      // m
  double y{0.0};      // m
  double v{0.0};      // m/s
  double theta{0.0};  // rad, normalized to (-pi, pi]

  Point2 position() const { return {x, y}; }
  Eigen::Vector4d as_vector() const { return {x, y, v, theta}; }
};

struct ControlInput {
  double a{0.0};      // m/s^2
  double delta{0.0};  // rad, |delta| < pi/2

  Eigen::Vector2d as_vector() const { return {a, delta}; }
};

struct VehicleParams {
  double wheelbase{2.7};
  double length{4.0};
  double width{1.8};
  double delta_max{30.0 * M_PI / 180.0};
  double delta_rate_max{45.0 * M_PI / 180.0};  // rad/s
  double a_min{-10.0};
  double a_max{2.0};
  double v_min{0.0};
  double v_max{15.0};
  double safety_margin{0.5};  // added to the footprint circle radius

  double footprint_radius() const {
    return std::max(width / 2.0, length / 4.0) + safety_margin;
  }
};

/// Continuous-time affine model x_dot = A x + B u + d about an operating
/// point (state ordering [x, y, v, theta], input ordering [a, delta]).
struct LinearModel {
  Eigen::Matrix4d A;
  Eigen::Matrix<double, 4, 2> B;
  Eigen::Vector4d d;
  double v_op{0.0};
  double theta_op{0.0};
  double delta_op{0.0};
};

/// First-order (forward-Euler) zero-order-hold discretization:
/// A_d = I + A Ts, B_d = B Ts, d_d = d Ts.
struct DiscreteModel {
  Eigen::Matrix4d A;
  Eigen::Matrix<double, 4, 2> B;
  Eigen::Vector4d d;
  double Ts{0.1};

  Eigen::Vector4d propagate(const Eigen::Vector4d& x,
                            const Eigen::Vector2d& u) const {
    return A * x + B * u + d;
  }
};

/// Kinematic bicycle derivative [v cos(th), v sin(th), a, v/L tan(delta)].
/// Throws std::invalid_argument at the steering singularity |delta| >= pi/2.
Eigen::Vector4d derivative(const VehicleState& s, const ControlInput& u,
                           const VehicleParams& p);

/// Jacobian linearization about (op_state, op_input); d is the affine
/// remainder f(x_bar, u_bar) - A x_bar - B u_bar in closed form.
LinearModel linearize(const VehicleState& op_state, const ControlInput& op_input,
                      const VehicleParams& p);

DiscreteModel discretize(const LinearModel& m, double Ts);

/// Ground-truth plant step: clamps u to the vehicle limits, advances the
/// nonlinear model one classical RK4 step of size dt, renormalizes theta and
/// clamps v to [v_min, v_max].
VehicleState step_plant(const VehicleState& s, const ControlInput& u,
                        const VehicleParams& p, double dt);

/// Dual-circle footprint at a pose: circle centers at wheelbase*0.25 and
/// wheelbase*0.75 ahead of the rear axle along the heading.
Footprint footprint_at(double x, double y, double theta,
                       const VehicleParams& p);

inline Footprint footprint_at(const VehicleState& s, const VehicleParams& p) {
  return footprint_at(s.x, s.y, s.theta, p);
}

}  // namespace junction

#endif  // JUNCTION_VEHICLE_MODEL_HPP
