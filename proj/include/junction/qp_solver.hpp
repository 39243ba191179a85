#ifndef JUNCTION_QP_SOLVER_HPP
#define JUNCTION_QP_SOLVER_HPP

#include <Eigen/Dense>
#include <vector>

#include "junction/geometry.hpp"

namespace junction {

/// minimize 0.5 z'Hz + g'z  s.t.  Ez = e,  lo <= z <= hi.
/// H must be symmetric PSD; +/-inf bounds are allowed.
struct QuadraticProgram {
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  Eigen::MatrixXd E;  // may have zero rows
  Eigen::VectorXd e;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int num_vars() const { return static_cast<int>(g.size()); }
  int num_eq() const { return static_cast<int>(e.size()); }
  double objective(const Eigen::VectorXd& z) const {
    return 0.5 * z.dot(H * z) + g.dot(z);
  }
};

enum class QpStatus { Optimal, MaxIter, Infeasible };

struct QpSolution {
  Eigen::VectorXd z;
  Eigen::VectorXd y_eq;   // multipliers of Ez = e
  Eigen::VectorXd y_box;  // multipliers of the box (>=0 at hi, <=0 at lo)
  QpStatus status{QpStatus::MaxIter};
  double kkt_residual{kInf};
  int iterations{0};
  /// Douglas-Rachford fixed-point step norms, recorded on request. The
  /// splitting operator is nonexpansive for fixed penalties, so this
  /// sequence is the solver's monotone merit function.
  std::vector<double> merit_history;
};

struct QpOptions {
  double tol{1e-6};
  int max_iter{4000};
  bool record_merit{false};
  // splitting penalties; fixed for the whole solve so the merit stays monotone
  double rho_box{5.0};
  double rho_eq{1000.0};
  /// Optional warm start (sizes must match the problem when used).
  Eigen::VectorXd warm_z;
};

QpSolution solve(const QuadraticProgram& qp, const QpOptions& options);

inline QpSolution solve(const QuadraticProgram& qp, double tol = 1e-6,
                        int max_iter = 4000) {
  QpOptions o;
  o.tol = tol;
  o.max_iter = max_iter;
  return solve(qp, o);
}

/// Independent KKT residual check, recomputed from the problem data alone:
/// max of equality residual, box violation, stationarity and complementarity.
double kkt_residual(const QuadraticProgram& qp, const Eigen::VectorXd& z,
                    const Eigen::VectorXd& y_eq, const Eigen::VectorXd& y_box);

}  // namespace junction

#endif  // JUNCTION_QP_SOLVER_HPP
