#include "magnomech/lyapunov.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

using Mat8 = Eigen::Matrix<double, 8, 8>;

double max_real_eigenvalue(const Mat8& M) {
  Eigen::EigenSolver<Mat8> es(M, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw SolverError("drift matrix eigenvalue computation failed");
  return es.eigenvalues().real().maxCoeff();
}

}  // namespace

CovarianceMatrix solve_lyapunov(const Mat8& M, const Mat8& D) {
  if (!M.allFinite() || !D.allFinite())
    throw DomainError("solve_lyapunov: non-finite input matrix");
  double max_re = max_real_eigenvalue(M);
  if (!(max_re < -1e-12)) {
    std::ostringstream msg;
    msg << "no steady state: drift matrix is not strictly stable "
        << "(max eigenvalue real part " << max_re << ")";
    throw StabilityError(msg.str());
  }

  // vec(MV + VM^T) = (I (x) M + M (x) I) vec(V), column-major vec.
  Eigen::Matrix<double, 64, 64> A = Eigen::Matrix<double, 64, 64>::Zero();
  for (int j = 0; j < 8; ++j)
    A.block<8, 8>(8 * j, 8 * j) += M;           // I (x) M
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i)
      A.block<8, 8>(8 * i, 8 * j) += M(i, j) * Eigen::Matrix<double, 8, 8>::Identity();
  Eigen::Matrix<double, 64, 1> b = -Eigen::Map<const Eigen::Matrix<double, 64, 1>>(D.data());

  Eigen::PartialPivLU<Eigen::Matrix<double, 64, 64>> lu(A);
  Eigen::Matrix<double, 64, 1> x = lu.solve(b);
  Mat8 V = Eigen::Map<Mat8>(x.data());

  double asym = (V - V.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, V.cwiseAbs().maxCoeff()))
    std::cerr << "solve_lyapunov: pre-symmetrization asymmetry " << asym << "\n";
  V = 0.5 * (V + V.transpose()).eval();

  CovarianceMatrix cm;
  cm.V = V;
  double dnorm = D.norm();
  cm.residual = (M * V + V * M.transpose() + D).norm() / (dnorm > 0 ? dnorm : 1.0);
  if (!V.allFinite() || cm.residual > 1e-10) {
    Eigen::JacobiSVD<Eigen::Matrix<double, 64, 64>> svd(A);
    double smin = svd.singularValues()(63);
    double cond = smin > 0 ? svd.singularValues()(0) / smin
                           : std::numeric_limits<double>::infinity();
    std::ostringstream msg;
    msg << "solve_lyapunov: numerically degenerate linear system (residual "
        << cm.residual << ", condition estimate " << cond << ")";
    throw SolverError(msg.str());
  }
  return cm;
}

Eigen::Matrix<double, 8, 8> integrate_covariance_ode(const Mat8& M, const Mat8& D,
                                                     const Mat8& V0, double t_final,
                                                     double tol) {
  if (!M.allFinite() || !D.allFinite() || !V0.allFinite())
    throw DomainError("integrate_covariance_ode: non-finite input");
  if (!(tol > 0)) throw DomainError("integrate_covariance_ode: tolerance must be positive");
  if (t_final < 0) throw DomainError("integrate_covariance_ode: negative final time");
  if (t_final == 0) return V0;

  auto rhs = [&](const Mat8& V) -> Mat8 { return M * V + V * M.transpose() + D; };

  // Cash-Karp embedded Runge-Kutta 4(5) coefficients.
  static const double b2[] = {1.0 / 5.0};
  static const double b3[] = {3.0 / 40.0, 9.0 / 40.0};
  static const double b4[] = {3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0};
  static const double b5[] = {-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0};
  static const double b6[] = {1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0,
                              44275.0 / 110592.0, 253.0 / 4096.0};
  static const double c5[] = {37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0,
                              512.0 / 1771.0};
  static const double c4[] = {2825.0 / 27648.0, 0.0, 18575.0 / 48384.0,
                              13525.0 / 55296.0, 277.0 / 14336.0, 1.0 / 4.0};

  Mat8 V = 0.5 * (V0 + V0.transpose()).eval();
  double t = 0.0;
  double h = std::min(t_final, 1e-3);
  const double h_min = t_final * 1e-14;
  long steps = 0;
  const long max_steps = 10'000'000;

  while (t < t_final) {
    if (++steps > max_steps)
      throw SolverError("integrate_covariance_ode: step budget exhausted");
    if (h < h_min)
      throw SolverError("integrate_covariance_ode: step size collapsed");
    if (t + h > t_final) h = t_final - t;

    Mat8 k1 = rhs(V);
    Mat8 k2 = rhs(V + h * b2[0] * k1);
    Mat8 k3 = rhs(V + h * (b3[0] * k1 + b3[1] * k2));
    Mat8 k4 = rhs(V + h * (b4[0] * k1 + b4[1] * k2 + b4[2] * k3));
    Mat8 k5 = rhs(V + h * (b5[0] * k1 + b5[1] * k2 + b5[2] * k3 + b5[3] * k4));
    Mat8 k6 = rhs(V + h * (b6[0] * k1 + b6[1] * k2 + b6[2] * k3 + b6[3] * k4 + b6[4] * k5));

    Mat8 V5 = V + h * (c5[0] * k1 + c5[2] * k3 + c5[3] * k4 + c5[5] * k6);
    Mat8 V4 = V + h * (c4[0] * k1 + c4[2] * k3 + c4[3] * k4 + c4[4] * k5 + c4[5] * k6);

    double err = (V5 - V4).cwiseAbs().maxCoeff();
    double scale = tol * std::max(1.0, V.cwiseAbs().maxCoeff());
    if (!std::isfinite(err)) {
      h *= 0.25;
      continue;
    }
    if (err <= scale) {
      t += h;
      V = 0.5 * (V5 + V5.transpose()).eval();
      double grow = err > 0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
      h *= std::min(5.0, std::max(0.2, grow));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(scale / err, 0.25));
    }
  }
  return V;
}

}  // namespace magnomech
