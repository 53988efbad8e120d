#pragma once

#include <Eigen/Dense>
#include <vector>

#include "magnomech/params.hpp"
#include "magnomech/steady.hpp"

namespace magnomech {

// Linearized fluctuation dynamics around a steady state, quadrature order
// (q, p, x, y, X1, Y1, X2, Y2): phonon, magnon, then the two cavities.
struct DriftModel {
  Eigen::Matrix<double, 8, 8> M;           // drift matrix (phonon-frequency units)
  Eigen::Matrix<double, 8, 8> D;           // diffusion matrix
  double delta_plus = 0.0;                 // magnon x-row detuning, Delta_m + 3*Delta_K
  double delta_minus = 0.0;                // magnon y-row detuning, -(Delta_m + Delta_K)
  std::vector<std::complex<double>> eigenvalues;  // of M, sorted by descending real part
};

// Assemble drift + diffusion from a solved steady state (uses ss.g_eff,
// ss.delta_K, ss.delta_m).
DriftModel build_drift_matrix(const SystemParams& params, const SteadyState& ss);

// Assemble with explicitly chosen effective coupling, Kerr shift and magnon
// detuning (all in phonon-frequency units).
DriftModel build_drift_matrix_explicit(const SystemParams& params, double g_eff,
                                       double delta_k, double delta_m);

// Diffusion matrix alone: diag(0, gamma_b(2 n_b + 1), kappa_m(2 n_m + 1) x2,
// kappa_1(2 n_1 + 1) x2, kappa_2(2 n_2 + 1) x2).
Eigen::Matrix<double, 8, 8> build_diffusion_matrix(const SystemParams& params);

// True iff every eigenvalue of M has real part below -margin.
bool check_stability(const DriftModel& model, double margin = 1e-12);

}  // namespace magnomech
