#pragma once

// Shared test fixtures: a programmatic copy of configs/baseline.ini and
// seeded random generators for stable drift matrices, diffusion matrices and
// physical covariance matrices with a planted symplectic spectrum.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "magnomech/constants.hpp"
#include "magnomech/params.hpp"

namespace support {

using Matrix8 = Eigen::Matrix<double, 8, 8>;

// Mirrors configs/baseline.ini so unit tests do not depend on file I/O.
inline magnomech::SystemParams baseline_params() {
  namespace cn = magnomech::constants;
  magnomech::SystemParams p;
  p.omega_b = cn::two_pi * 1.0e7;
  p.omega_1 = cn::two_pi * 1.0e10;
  p.omega_2 = cn::two_pi * 1.0e10;
  p.omega_m = cn::two_pi * 1.0e10;
  p.delta_1 = -1.0;
  p.delta_2 = 1.0;
  p.delta_m0 = 1.0;
  p.omega_0 = p.omega_1 - p.delta_1 * p.omega_b;
  p.kappa_1 = 0.1;
  p.kappa_2 = 0.1;
  p.kappa_m = 0.2;
  p.gamma_b = 1.0e-5;
  p.coupling_gamma_1 = 0.32;
  p.coupling_gamma_2 = 0.32;
  p.g_mb = cn::two_pi * 0.3;
  p.kerr_K = cn::two_pi * 1.0e-8;
  p.rabi_Omega = 5.42294e14;
  p.drive_E1 = 3.07937032e14;
  p.drive_E2 = 3.07937032e14;
  p.temperature = 0.010;
  p.delta_m_is_effective = true;
  p.refresh_occupations();
  return p;
}

inline magnomech::MaterialConstants baseline_material() {
  namespace cn = magnomech::constants;
  magnomech::MaterialConstants m;
  m.verdet = 4.8819552861e6;
  m.refractive_index = 2.19;
  m.spin_density = 4.22e27;
  m.sphere_radius = 50.0e-6;
  m.mu0_kan = 2.083e-31;
  m.saturation_M = 1.4e5;
  m.gamma_G = cn::two_pi * 2.8e10;
  m.spin_number_density = 4.22e27;
  m.drive_field = 1.3e-4;
  m.laser_power = 0.05;
  m.laser_frequency = cn::two_pi * 1.0e10;
  m.axis = magnomech::CrystalAxis::axis_100;
  return m;
}

inline bool close(double a, double b, double rtol, double atol = 0.0) {
  return std::abs(a - b) <= atol + rtol * std::abs(b);
}

// Random matrix with eigenvalue real parts shifted below -margin,
// margin drawn from [0.5, 1.5].
inline Matrix8 random_stable_drift(std::mt19937& rng) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> marg(0.5, 1.5);
  Matrix8 a;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) a(i, j) = entry(rng);
  Eigen::EigenSolver<Matrix8> es(a, false);
  double worst = es.eigenvalues().real().maxCoeff();
  return a - (worst + marg(rng)) * Matrix8::Identity();
}

// Positive diagonal diffusion matrix, entries in [0.1, 2].
inline Matrix8 random_diffusion(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(0.1, 2.0);
  Matrix8 m = Matrix8::Zero();
  for (int i = 0; i < 8; ++i) m(i, i) = d(rng);
  return m;
}

// Random symplectic matrix on n modes (interleaved x,p ordering), built from
// single-mode rotations/squeezers and two-mode beamsplitters/squeezers.
inline Eigen::MatrixXd random_symplectic(int n, std::mt19937& rng) {
  namespace cn = magnomech::constants;
  std::uniform_real_distribution<double> angle(0.0, cn::two_pi);
  std::uniform_real_distribution<double> squeeze(-0.6, 0.6);
  std::uniform_int_distribution<int> mode(0, n - 1);
  std::uniform_int_distribution<int> kind(0, n > 1 ? 3 : 1);

  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  const int layers = 4 * n + 4;
  for (int l = 0; l < layers; ++l) {
    Eigen::MatrixXd op = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    int i = mode(rng);
    switch (kind(rng)) {
      case 0: {  // single-mode rotation
        double t = angle(rng), c = std::cos(t), sn = std::sin(t);
        op(2 * i, 2 * i) = c;
        op(2 * i, 2 * i + 1) = sn;
        op(2 * i + 1, 2 * i) = -sn;
        op(2 * i + 1, 2 * i + 1) = c;
        break;
      }
      case 1: {  // single-mode squeeze
        double r = squeeze(rng);
        op(2 * i, 2 * i) = std::exp(r);
        op(2 * i + 1, 2 * i + 1) = std::exp(-r);
        break;
      }
      case 2: {  // beamsplitter on (i, j)
        int j = mode(rng);
        if (j == i) j = (i + 1) % n;
        double t = angle(rng), c = std::cos(t), sn = std::sin(t);
        for (int q = 0; q < 2; ++q) {
          op(2 * i + q, 2 * i + q) = c;
          op(2 * i + q, 2 * j + q) = sn;
          op(2 * j + q, 2 * i + q) = -sn;
          op(2 * j + q, 2 * j + q) = c;
        }
        break;
      }
      default: {  // two-mode squeeze on (i, j)
        int j = mode(rng);
        if (j == i) j = (i + 1) % n;
        double r = squeeze(rng), ch = std::cosh(r), sh = std::sinh(r);
        op(2 * i, 2 * i) = op(2 * i + 1, 2 * i + 1) = ch;
        op(2 * j, 2 * j) = op(2 * j + 1, 2 * j + 1) = ch;
        op(2 * i, 2 * j) = op(2 * j, 2 * i) = sh;
        op(2 * i + 1, 2 * j + 1) = op(2 * j + 1, 2 * i + 1) = -sh;
        break;
      }
    }
    s = op * s;
  }
  return s;
}

struct PlantedCm {
  Eigen::MatrixXd V;
  std::vector<double> nu;  // planted symplectic spectrum, ascending
};

// Physical covariance matrix V = S diag(nu_k, nu_k) S^T with nu_k >= 1/2.
inline PlantedCm random_physical_cm(int n, std::mt19937& rng, double nu_max = 3.0) {
  std::uniform_real_distribution<double> nu_dist(0.5, nu_max);
  PlantedCm out;
  out.nu.resize(n);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    out.nu[k] = nu_dist(rng);
    w(2 * k, 2 * k) = w(2 * k + 1, 2 * k + 1) = out.nu[k];
  }
  std::sort(out.nu.begin(), out.nu.end());
  Eigen::MatrixXd s = random_symplectic(n, rng);
  out.V = s * w * s.transpose();
  out.V = ((out.V + out.V.transpose()) / 2.0).eval();
  return out;
}

// Two-mode squeezed vacuum, V = (1/2) [[cosh2r I, sinh2r Z], [sinh2r Z, cosh2r I]].
inline Eigen::Matrix4d tmsv_cm(double r) {
  double ch = std::cosh(2.0 * r) / 2.0, sh = std::sinh(2.0 * r) / 2.0;
  Eigen::Matrix4d v;
  v << ch, 0, sh, 0,
       0, ch, 0, -sh,
       sh, 0, ch, 0,
       0, -sh, 0, ch;
  return v;
}

// Smaller partially-transposed symplectic eigenvalue of a two-mode covariance
// matrix via the determinant (symplectic-invariant) formula; independent of
// the eigen-decomposition route used by the library.
inline double nu_minus_pt_determinant(const Eigen::Matrix4d& v) {
  double det_a = v.block<2, 2>(0, 0).determinant();
  double det_b = v.block<2, 2>(2, 2).determinant();
  double det_c = v.block<2, 2>(0, 2).determinant();
  double det_v = v.determinant();
  double delta = det_a + det_b - 2.0 * det_c;
  double disc = delta * delta - 4.0 * det_v;
  if (disc < 0) disc = 0;
  double nu2 = (delta - std::sqrt(disc)) / 2.0;
  return std::sqrt(std::max(nu2, 0.0));
}

}  // namespace support
