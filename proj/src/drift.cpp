#include "magnomech/drift.hpp"

#include <algorithm>

#include "magnomech/errors.hpp"

namespace magnomech {

Eigen::Matrix<double, 8, 8> build_diffusion_matrix(const SystemParams& params) {
  Eigen::Matrix<double, 8, 8> D = Eigen::Matrix<double, 8, 8>::Zero();
  D(0, 0) = 0.0;
  D(1, 1) = params.gamma_b * (2.0 * params.n_b + 1.0);
  D(2, 2) = D(3, 3) = params.kappa_m * (2.0 * params.n_m + 1.0);
  D(4, 4) = D(5, 5) = params.kappa_1 * (2.0 * params.n_1 + 1.0);
  D(6, 6) = D(7, 7) = params.kappa_2 * (2.0 * params.n_2 + 1.0);
  return D;
}

DriftModel build_drift_matrix_explicit(const SystemParams& params, double g_eff,
                                       double delta_k, double delta_m) {
  DriftModel model;
  model.delta_plus = delta_m + 3.0 * delta_k;
  model.delta_minus = -(delta_m + delta_k);

  Eigen::Matrix<double, 8, 8>& M = model.M;
  M.setZero();
  const double G = g_eff;
  const double g1 = params.coupling_gamma_1, g2 = params.coupling_gamma_2;

  // phonon (q, p)
  M(0, 1) = 1.0;
  M(1, 0) = -1.0;
  M(1, 1) = -params.gamma_b;
  M(1, 3) = G;
  // magnon (x, y)
  M(2, 0) = -G;
  M(2, 2) = -params.kappa_m;
  M(2, 3) = model.delta_plus;
  M(2, 5) = g1;
  M(2, 7) = g2;
  M(3, 2) = model.delta_minus;
  M(3, 3) = -params.kappa_m;
  M(3, 4) = -g1;
  M(3, 6) = -g2;
  // cavity 1 (X1, Y1)
  M(4, 3) = g1;
  M(4, 4) = -params.kappa_1;
  M(4, 5) = params.delta_1;
  M(5, 2) = -g1;
  M(5, 4) = -params.delta_1;
  M(5, 5) = -params.kappa_1;
  // cavity 2 (X2, Y2)
  M(6, 3) = g2;
  M(6, 6) = -params.kappa_2;
  M(6, 7) = params.delta_2;
  M(7, 2) = -g2;
  M(7, 6) = -params.delta_2;
  M(7, 7) = -params.kappa_2;

  model.D = build_diffusion_matrix(params);

  Eigen::EigenSolver<Eigen::Matrix<double, 8, 8>> es(M, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw SolverError("drift matrix eigenvalue computation failed");
  model.eigenvalues.resize(8);
  for (int i = 0; i < 8; ++i) model.eigenvalues[i] = es.eigenvalues()(i);
  std::sort(model.eigenvalues.begin(), model.eigenvalues.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });
  return model;
}

DriftModel build_drift_matrix(const SystemParams& params, const SteadyState& ss) {
  if (!ss.converged) throw SolverError("build_drift_matrix: steady state not converged");
  return build_drift_matrix_explicit(params, ss.g_eff, ss.delta_K, ss.delta_m);
}

bool check_stability(const DriftModel& model, double margin) {
  if (model.eigenvalues.empty()) return false;
  return model.eigenvalues.front().real() < -margin;
}

}  // namespace magnomech
