#include "junction/mpc_controller.hpp"

#include <cmath>
#include <stdexcept>

namespace junction {

Eigen::Matrix2d tracking_error_weight(double theta_ref, double w_perp,
                                      double w_par) {
  const double c = std::cos(theta_ref);
  const double s = std::sin(theta_ref);
  Eigen::Vector2d n_par{c, s};
  Eigen::Vector2d n_perp{-s, c};
  return w_perp * n_perp * n_perp.transpose() +
         w_par * n_par * n_par.transpose();
}

AssembledQp assemble(const VehicleState& state,
                     std::span<const ReferenceSample> ref_window,
                     const DiscreteModel& model, const MpcWeights& weights,
                     const MpcConfig& config,
                     const ControlInput& previous_input) {
  const int N = config.Nc;
  if (static_cast<int>(ref_window.size()) != N + 1) {
    throw std::invalid_argument("reference window must hold Nc+1 samples");
  }

  AssembledQp out;
  out.Nc = N;
  const int n = 7 * N;   // 4N states, 2N inputs, N steering differences
  const int me = 5 * N;  // 4N dynamics rows, N difference rows

  QuadraticProgram& qp = out.qp;
  qp.H = Eigen::MatrixXd::Zero(n, n);
  qp.g = Eigen::VectorXd::Zero(n);
  qp.E = Eigen::MatrixXd::Zero(me, n);
  qp.e = Eigen::VectorXd::Zero(me);
  qp.lo = Eigen::VectorXd::Constant(n, -kInf);
  qp.hi = Eigen::VectorXd::Constant(n, kInf);

  auto ref_vec = [&](int k) {
    return Eigen::Vector4d{ref_window[k].x, ref_window[k].y, ref_window[k].v,
                           ref_window[k].theta};
  };

  // stage tracking terms, k = 1..Nc-1
  for (int k = 1; k < N; ++k) {
    const int ox = out.state_offset(k);
    const Eigen::Matrix2d q_xy =
        tracking_error_weight(ref_window[k].theta, weights.w_perp, weights.w_par);
    const Eigen::Vector2d r_xy{ref_window[k].x, ref_window[k].y};
    qp.H.block<2, 2>(ox, ox) += 2.0 * q_xy;
    qp.g.segment<2>(ox) += -2.0 * q_xy * r_xy;
    out.constant += r_xy.dot(q_xy * r_xy);

    const double w_theta = weights.q_thetav[0];
    const double w_v = weights.q_thetav[1];
    qp.H(ox + 3, ox + 3) += 2.0 * w_theta;
    qp.g[ox + 3] += -2.0 * w_theta * ref_window[k].theta;
    out.constant += w_theta * ref_window[k].theta * ref_window[k].theta;
    qp.H(ox + 2, ox + 2) += 2.0 * w_v;
    qp.g[ox + 2] += -2.0 * w_v * ref_window[k].v;
    out.constant += w_v * ref_window[k].v * ref_window[k].v;
  }

  // terminal term
  {
    const int ox = out.state_offset(N);
    const Eigen::Vector4d rN = ref_vec(N);
    for (int i = 0; i < 4; ++i) {
      qp.H(ox + i, ox + i) += 2.0 * weights.q_f[i];
      qp.g[ox + i] += -2.0 * weights.q_f[i] * rN[i];
      out.constant += weights.q_f[i] * rN[i] * rN[i];
    }
  }

  // input magnitude terms
  for (int k = 0; k < N; ++k) {
    const int ou = out.input_offset(k);
    qp.H(ou, ou) += 2.0 * weights.r[0];
    qp.H(ou + 1, ou + 1) += 2.0 * weights.r[1];
  }
  // acceleration rate terms; the first difference is taken against the
  // previously applied input
  {
    const int ou = out.input_offset(0);
    qp.H(ou, ou) += 2.0 * weights.r_d[0];
    qp.g[ou] += -2.0 * weights.r_d[0] * previous_input.a;
    out.constant += weights.r_d[0] * previous_input.a * previous_input.a;
  }
  for (int k = 1; k < N; ++k) {
    const int oa = out.input_offset(k - 1);
    const int ob = out.input_offset(k);
    qp.H(oa, oa) += 2.0 * weights.r_d[0];
    qp.H(ob, ob) += 2.0 * weights.r_d[0];
    qp.H(oa, ob) += -2.0 * weights.r_d[0];
    qp.H(ob, oa) += -2.0 * weights.r_d[0];
  }
  // steering rate terms live on the difference variables, which equal
  // delta_k - delta_{k-1} through the equality rows below
  for (int k = 0; k < N; ++k) {
    const int ow = out.rate_offset(k);
    qp.H(ow, ow) += 2.0 * weights.r_d[1];
  }

  // strict convexity on the reduced space; keeps the solver certificate valid
  qp.H.diagonal().array() += 1e-8;

  // dynamics: x(1) = A x0 + B u0 + d, then x(k+1) = A x(k) + B u(k) + d
  const Eigen::Vector4d x0 = state.as_vector();
  for (int k = 0; k < N; ++k) {
    const int row = 4 * k;
    const int ox_next = out.state_offset(k + 1);
    qp.E.block<4, 4>(row, ox_next).setIdentity();
    qp.E.block<4, 2>(row, out.input_offset(k)) = -model.B;
    if (k == 0) {
      qp.e.segment<4>(row) = model.A * x0 + model.d;
    } else {
      qp.E.block<4, 4>(row, out.state_offset(k)) = -model.A;
      qp.e.segment<4>(row) = model.d;
    }
  }
  // steering differences: w_0 = delta_0 - delta_prev, w_k = delta_k - delta_{k-1}
  for (int k = 0; k < N; ++k) {
    const int row = 4 * N + k;
    qp.E(row, out.rate_offset(k)) = 1.0;
    qp.E(row, out.input_offset(k) + 1) = -1.0;
    if (k == 0) {
      qp.e[row] = -previous_input.delta;
    } else {
      qp.E(row, out.input_offset(k - 1) + 1) = 1.0;
      qp.e[row] = 0.0;
    }
  }

  // boxes
  for (int k = 1; k <= N; ++k) {
    qp.lo[out.state_offset(k) + 2] = config.v_min;
    qp.hi[out.state_offset(k) + 2] = config.v_max;
  }
  for (int k = 0; k < N; ++k) {
    const int ou = out.input_offset(k);
    qp.lo[ou] = config.a_min;
    qp.hi[ou] = config.a_max;
    qp.lo[ou + 1] = -config.delta_max;
    qp.hi[ou + 1] = config.delta_max;
    const double rate = config.delta_rate_max * config.Ts;
    qp.lo[out.rate_offset(k)] = -rate;
    qp.hi[out.rate_offset(k)] = rate;
  }

  return out;
}

MpcSolution step(const VehicleState& state, const ControlInput& previous_input,
                 const ReferenceTrajectory& ref, const VehicleParams& params,
                 const MpcWeights& weights, const MpcConfig& config,
                 double s_hint) {
  const ControlInput op{previous_input.a,
                        std::clamp(previous_input.delta, -params.delta_max,
                                   params.delta_max)};
  const DiscreteModel model = discretize(linearize(state, op, params), config.Ts);
  const auto window = sample_reference(ref, state, config.Nc, config.Ts, s_hint);
  const AssembledQp built =
      assemble(state, window, model, weights, config, previous_input);

  QpOptions opts;
  auto qp_result = solve(built.qp, opts);

  MpcSolution sol;
  sol.qp_status = qp_result.status;
  sol.qp_iterations = qp_result.iterations;
  sol.x_pred.push_back(state);

  if (qp_result.status != QpStatus::Optimal) {
    // steady braking fallback; the simulation keeps running on it
    sol.degraded = true;
    sol.u0 = {0.5 * config.a_min, op.delta};
    sol.u_seq.assign(config.Nc, sol.u0);
    Eigen::Vector4d x = state.as_vector();
    for (int k = 0; k < config.Nc; ++k) {
      x = model.propagate(x, sol.u0.as_vector());
      sol.x_pred.push_back({x[0], x[1], x[2], x[3]});
    }
    return sol;
  }

  sol.cost = built.qp.objective(qp_result.z) + built.constant;
  sol.u_seq.reserve(config.Nc);
  for (int k = 0; k < config.Nc; ++k) {
    const int ou = built.input_offset(k);
    ControlInput u{qp_result.z[ou], qp_result.z[ou + 1]};
    u.a = std::clamp(u.a, config.a_min, config.a_max);
    u.delta = std::clamp(u.delta, -config.delta_max, config.delta_max);
    sol.u_seq.push_back(u);
  }
  sol.u0 = sol.u_seq.front();

  // predictions propagate the model, so step-to-step consistency is exact
  Eigen::Vector4d x = state.as_vector();
  for (int k = 0; k < config.Nc; ++k) {
    x = model.propagate(x, sol.u_seq[k].as_vector());
    sol.x_pred.push_back({x[0], x[1], x[2], x[3]});
  }
  return sol;
}

}  // namespace junction
