#pragma once

#include <Eigen/Dense>
#include <array>

namespace magnomech {

// Steady-state second moments of the quadrature fluctuations, same
// (q, p, x, y, X1, Y1, X2, Y2) ordering as DriftModel.
struct CovarianceMatrix {
  Eigen::Matrix<double, 8, 8> V = Eigen::Matrix<double, 8, 8>::Zero();
  std::array<const char*, 4> mode_order = {"b", "m", "c1", "c2"};
  double residual = 0.0;            // ||MV + VM^T + D||_F / ||D||_F
  double condition_estimate = 0.0;  // of the vectorized linear system (0 = not computed)
};

// Solve MV + VM^T = -D by dense vectorization of the 64x64 linear system,
// then symmetrize. Throws StabilityError for unstable M and SolverError when
// the linear system is numerically degenerate.
CovarianceMatrix solve_lyapunov(const Eigen::Matrix<double, 8, 8>& M,
                                const Eigen::Matrix<double, 8, 8>& D);

// Adaptive 4th/5th-order integration of dV/dt = M V + V M^T + D from V0,
// symmetrizing after every accepted step. Exists as an independent oracle for
// solve_lyapunov. Throws SolverError on step-size collapse.
Eigen::Matrix<double, 8, 8> integrate_covariance_ode(
    const Eigen::Matrix<double, 8, 8>& M, const Eigen::Matrix<double, 8, 8>& D,
    const Eigen::Matrix<double, 8, 8>& V0, double t_final, double tol);

}  // namespace magnomech
