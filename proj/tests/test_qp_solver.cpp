#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "junction/qp_solver.hpp"

using namespace junction;

namespace {

QuadraticProgram make_qp(int n, int me) {
  QuadraticProgram qp;
  qp.H = Eigen::MatrixXd::Zero(n, n);
  qp.g = Eigen::VectorXd::Zero(n);
  qp.E = Eigen::MatrixXd::Zero(me, n);
  qp.e = Eigen::VectorXd::Zero(me);
  qp.lo = Eigen::VectorXd::Constant(n, -kInf);
  qp.hi = Eigen::VectorXd::Constant(n, kInf);
  return qp;
}

// Exhaustive oracle: every bounded variable is enumerated as free / at lower /
// at upper; each combination is an equality-constrained QP solved via its KKT
// system. The feasible candidate with the smallest objective is the optimum.
struct OracleResult {
  bool found{false};
  Eigen::VectorXd z;
  double objective{kInf};
};

OracleResult enumerate_active_sets(const QuadraticProgram& qp) {
  const int n = qp.num_vars();
  const int me = qp.num_eq();
  std::vector<int> bounded;
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(qp.lo[i]) || std::isfinite(qp.hi[i])) bounded.push_back(i);
  }
  const int nb = static_cast<int>(bounded.size());
  OracleResult best;

  std::vector<int> assign(nb, 0);  // 0 free, 1 at lo, 2 at hi
  long total = 1;
  for (int i = 0; i < nb; ++i) total *= 3;

  for (long code = 0; code < total; ++code) {
    long c = code;
    bool valid = true;
    std::vector<std::pair<int, double>> fixed;
    for (int i = 0; i < nb; ++i) {
      assign[i] = static_cast<int>(c % 3);
      c /= 3;
      if (assign[i] == 1) {
        if (!std::isfinite(qp.lo[bounded[i]])) valid = false;
        fixed.push_back({bounded[i], qp.lo[bounded[i]]});
      } else if (assign[i] == 2) {
        if (!std::isfinite(qp.hi[bounded[i]])) valid = false;
        fixed.push_back({bounded[i], qp.hi[bounded[i]]});
      }
    }
    if (!valid) continue;

    const int ma = static_cast<int>(fixed.size());
    const int dim = n + me + ma;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd rhs(dim);
    K.topLeftCorner(n, n) = qp.H;
    rhs.head(n) = -qp.g;
    if (me > 0) {
      K.block(n, 0, me, n) = qp.E;
      K.block(0, n, n, me) = qp.E.transpose();
      rhs.segment(n, me) = qp.e;
    }
    for (int i = 0; i < ma; ++i) {
      K(n + me + i, fixed[i].first) = 1.0;
      K(fixed[i].first, n + me + i) = 1.0;
      rhs[n + me + i] = fixed[i].second;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    if (!lu.isInvertible()) continue;
    Eigen::VectorXd sol = lu.solve(rhs);
    Eigen::VectorXd z = sol.head(n);

    bool feasible = true;
    for (int i = 0; i < n; ++i) {
      if (z[i] < qp.lo[i] - 1e-9 || z[i] > qp.hi[i] + 1e-9) feasible = false;
    }
    if (me > 0 && (qp.E * z - qp.e).lpNorm<Eigen::Infinity>() > 1e-8) {
      feasible = false;
    }
    if (!feasible) continue;

    const double obj = qp.objective(z);
    if (obj < best.objective) {
      best.found = true;
      best.z = z;
      best.objective = obj;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("clipped scalar problem") {
  // min (z-1)^2 s.t. 0 <= z <= 0.5
  auto qp = make_qp(1, 0);
  qp.H(0, 0) = 2.0;
  qp.g[0] = -2.0;
  qp.lo[0] = 0.0;
  qp.hi[0] = 0.5;
  auto sol = solve(qp);
  REQUIRE(sol.status == QpStatus::Optimal);
  CHECK(sol.z[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(sol.kkt_residual <= 1e-6);
}

TEST_CASE("symmetric equality problem") {
  // min z1^2 + z2^2 s.t. z1 + z2 = 1
  auto qp = make_qp(2, 1);
  qp.H = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  qp.E << 1.0, 1.0;
  qp.e[0] = 1.0;
  auto sol = solve(qp);
  REQUIRE(sol.status == QpStatus::Optimal);
  CHECK(sol.z[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(sol.z[1] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("infeasible pin is detected in presolve") {
  auto qp = make_qp(2, 1);
  qp.H = Eigen::MatrixXd::Identity(2, 2);
  qp.E << 1.0, 0.0;  // z1 = 5 against z1 <= 1
  qp.e[0] = 5.0;
  qp.lo << 0.0, 0.0;
  qp.hi << 1.0, 1.0;
  auto sol = solve(qp);
  CHECK(sol.status == QpStatus::Infeasible);
}

TEST_CASE("random QPs match the active-set enumeration oracle") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> u01(-1.0, 1.0);
  std::uniform_int_distribution<int> nd(3, 12);

  for (int trial = 0; trial < 50; ++trial) {
    const int n = nd(rng);
    const int me = std::uniform_int_distribution<int>(0, n / 3)(rng);

    auto qp = make_qp(n, me);
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = u01(rng);
    qp.H = M.transpose() * M + 0.1 * Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) qp.g[i] = 2.0 * u01(rng);

    for (int r = 0; r < me; ++r) {
      for (int c = 0; c < n; ++c) qp.E(r, c) = u01(rng);
      qp.e[r] = u01(rng);
    }

    // bound roughly half the variables, at most 6, so enumeration stays cheap
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    const int nb = std::min(6, n / 2 + 1);
    for (int i = 0; i < nb; ++i) {
      const double a = u01(rng), b = u01(rng);
      qp.lo[idx[i]] = std::min(a, b);
      qp.hi[idx[i]] = std::max(a, b);
    }

    auto oracle = enumerate_active_sets(qp);
    auto sol = solve(qp);
    if (!oracle.found) {
      CHECK(sol.status != QpStatus::Optimal);
      continue;
    }
    REQUIRE(sol.status == QpStatus::Optimal);
    CHECK((sol.z - oracle.z).lpNorm<Eigen::Infinity>() <= 1e-6);
  }
}

TEST_CASE("every Optimal result passes the independent KKT checker") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u01(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 8;
    auto qp = make_qp(n, 2);
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = u01(rng);
    qp.H = M.transpose() * M + 0.05 * Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
      qp.g[i] = u01(rng);
      qp.lo[i] = -0.5;
      qp.hi[i] = 0.5;
    }
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < n; ++c) qp.E(r, c) = u01(rng);
      qp.e[r] = 0.2 * u01(rng);
    }
    auto sol = solve(qp);
    if (sol.status == QpStatus::Optimal) {
      CHECK(kkt_residual(qp, sol.z, sol.y_eq, sol.y_box) <= 1e-6);
    }
  }
}

TEST_CASE("scale invariance of the argmin") {
  auto qp = make_qp(4, 1);
  qp.H << 4, 1, 0, 0, 1, 3, 0.5, 0, 0, 0.5, 2, 0.2, 0, 0, 0.2, 1;
  qp.g << 1, -2, 0.5, 0.3;
  qp.E << 1, 1, 1, 1;
  qp.e[0] = 0.5;
  qp.lo.setConstant(-1.0);
  qp.hi.setConstant(1.0);

  auto base = solve(qp);
  REQUIRE(base.status == QpStatus::Optimal);

  QuadraticProgram scaled = qp;
  scaled.H *= 37.0;
  scaled.g *= 37.0;
  auto s = solve(scaled);
  REQUIRE(s.status == QpStatus::Optimal);
  CHECK((base.z - s.z).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("fixed-point merit is monotonically non-increasing") {
  auto qp = make_qp(6, 2);
  Eigen::MatrixXd M(6, 6);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u01(-1.0, 1.0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) M(i, j) = u01(rng);
  qp.H = M.transpose() * M + 0.1 * Eigen::MatrixXd::Identity(6, 6);
  for (int i = 0; i < 6; ++i) {
    qp.g[i] = u01(rng);
    qp.lo[i] = -0.3;
    qp.hi[i] = 0.4;
  }
  qp.E << 1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0;
  qp.e << 0.1, -0.1;

  QpOptions opts;
  opts.record_merit = true;
  auto sol = solve(qp, opts);
  REQUIRE(sol.merit_history.size() > 5);
  for (size_t i = 1; i < sol.merit_history.size(); ++i) {
    CHECK(sol.merit_history[i] <= sol.merit_history[i - 1] + 1e-12);
  }
}

TEST_CASE("warm start does not change the certified answer") {
  auto qp = make_qp(5, 1);
  qp.H = 3.0 * Eigen::MatrixXd::Identity(5, 5);
  qp.g << 1, -1, 0.5, 2, -0.3;
  qp.E << 1, 1, 0, 0, 1;
  qp.e[0] = 0.7;
  qp.lo.setConstant(-2.0);
  qp.hi.setConstant(2.0);

  auto cold = solve(qp);
  REQUIRE(cold.status == QpStatus::Optimal);

  QpOptions opts;
  opts.warm_z = cold.z + Eigen::VectorXd::Constant(5, 0.05);
  auto warm = solve(qp, opts);
  REQUIRE(warm.status == QpStatus::Optimal);
  CHECK((cold.z - warm.z).lpNorm<Eigen::Infinity>() <= 1e-6);
}
