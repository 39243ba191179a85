#ifndef JUNCTION_MPC_CONTROLLER_HPP
#define JUNCTION_MPC_CONTROLLER_HPP

#include <span>
#include <vector>

#include "junction/qp_solver.hpp"
#include "junction/reference_trajectory.hpp"
#include "junction/vehicle_model.hpp"

namespace junction {

struct MpcWeights {
  double w_perp{20.0};
  double w_par{1.0};
  Eigen::Vector2d q_thetav{0.5, 0.0};  // (heading, speed)
  Eigen::Vector2d r{0.1, 0.01};        // input magnitude (accel, steer)
  Eigen::Vector2d r_d{10.0, 1.0};      // input rate (accel, steer)
  Eigen::Vector4d q_f{1.0, 1.0, 0.0, 0.5};  // terminal, order [x, y, v, theta]
};

struct MpcConfig {
  int Nc{13};
  double Ts{0.1};
  // limits, normally copied from VehicleParams
  double delta_max{30.0 * M_PI / 180.0};
  double delta_rate_max{45.0 * M_PI / 180.0};
  double a_min{-10.0};
  double a_max{2.0};
  double v_min{0.0};
  double v_max{15.0};

  static MpcConfig from(const VehicleParams& p, int horizon = 13,
                        double sample_time = 0.1) {
    MpcConfig c;
    c.Nc = horizon;
    c.Ts = sample_time;
    c.delta_max = p.delta_max;
    c.delta_rate_max = p.delta_rate_max;
    c.a_min = p.a_min;
    c.a_max = p.a_max;
    c.v_min = p.v_min;
    c.v_max = p.v_max;
    return c;
  }
};

struct MpcSolution {
  ControlInput u0;
  std::vector<ControlInput> u_seq;   // Nc inputs
  std::vector<VehicleState> x_pred;  // Nc+1 states, [0] = measured state
  double cost{0.0};
  QpStatus qp_status{QpStatus::MaxIter};
  int qp_iterations{0};
  bool degraded{false};  // braking fallback applied after a QP failure
};

/// Q_xy = w_perp n_perp n_perp' + w_par n_par n_par' with n_par along the
/// reference heading. Eigenvalues are always {w_perp, w_par}.
Eigen::Matrix2d tracking_error_weight(double theta_ref, double w_perp,
                                      double w_par);

struct AssembledQp {
  QuadraticProgram qp;
  double constant{0.0};  // objective constant, so reported costs are exact

  // decision vector layout
  int Nc{0};
  int state_offset(int k) const { return (k - 1) * 4; }      // k = 1..Nc
  int input_offset(int k) const { return 4 * Nc + 2 * k; }   // k = 0..Nc-1
  int rate_offset(int k) const { return 6 * Nc + k; }        // k = 0..Nc-1
};

/// Builds the tracking QP: stacked states x_1..x_Nc, inputs u_0..u_{Nc-1}
/// and steering-difference variables for the rate bound. Dynamics enter as
/// equality rows, limits as boxes. The first input-rate penalty is taken
/// against the previously applied input.
AssembledQp assemble(const VehicleState& state,
                     std::span<const ReferenceSample> ref_window,
                     const DiscreteModel& model, const MpcWeights& weights,
                     const MpcConfig& config, const ControlInput& previous_input);

/// One receding-horizon step: linearize at the measured state with the
/// previously applied steering, discretize, sample the reference, assemble
/// and solve. A solver failure degrades to steady braking instead of
/// aborting.
MpcSolution step(const VehicleState& state, const ControlInput& previous_input,
                 const ReferenceTrajectory& ref, const VehicleParams& params,
                 const MpcWeights& weights, const MpcConfig& config,
                 double s_hint = 0.0);

}  // namespace junction

#endif  // JUNCTION_MPC_CONTROLLER_HPP
