#include "magnomech/measures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

void require_symmetric(const Eigen::MatrixXd& V, const char* who) {
  double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
  if ((V - V.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    std::ostringstream msg;
    msg << who << ": input matrix not symmetric";
    throw DomainError(msg.str());
  }
}

double min_symplectic(const Eigen::MatrixXd& V) {
  auto nus = symplectic_eigenvalues(V);
  return nus.front();
}

// 4x4 principal submatrix of a 6x6 three-mode CM on two mode slots.
Eigen::Matrix<double, 4, 4> pair_from_triple(const Eigen::Matrix<double, 6, 6>& V6,
                                             int a, int b) {
  Eigen::Matrix<double, 4, 4> out;
  const int rows[4] = {2 * a, 2 * a + 1, 2 * b, 2 * b + 1};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = V6(rows[i], rows[j]);
  return out;
}

double neg_from_nu(double nu_minus) {
  double e = -std::log(2.0 * nu_minus);
  return e > 0 ? e : 0.0;
}

}  // namespace

Eigen::MatrixXd reduce_cm(const Eigen::Matrix<double, 8, 8>& V, const ModeSelection& sel) {
  const auto& modes = sel.modes;
  if (modes.empty() || modes.size() > 4)
    throw DomainError("reduce_cm: selection must contain 1 to 4 modes");
  for (size_t i = 0; i < modes.size(); ++i) {
    int idx = static_cast<int>(modes[i]);
    if (idx < 0 || idx > 3) throw DomainError("reduce_cm: mode index out of range");
    for (size_t j = i + 1; j < modes.size(); ++j)
      if (modes[j] == modes[i]) throw DomainError("reduce_cm: duplicate mode in selection");
  }
  const int n = static_cast<int>(modes.size());
  Eigen::MatrixXd out(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.block<2, 2>(2 * i, 2 * j) =
          V.block<2, 2>(2 * static_cast<int>(modes[i]), 2 * static_cast<int>(modes[j]));
  return out;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& V, const std::vector<int>& party) {
  if (V.rows() != V.cols() || V.rows() % 2 != 0)
    throw DomainError("partial_transpose: matrix must be 2n x 2n");
  const int n = static_cast<int>(V.rows()) / 2;
  if (party.empty() || static_cast<int>(party.size()) >= n)
    throw DomainError("partial_transpose: party must be a nonempty proper subset of modes");
  Eigen::VectorXd signs = Eigen::VectorXd::Ones(2 * n);
  for (int mode : party) {
    if (mode < 0 || mode >= n)
      throw DomainError("partial_transpose: mode index out of range");
    if (signs(2 * mode + 1) < 0)
      throw DomainError("partial_transpose: duplicate mode in party");
    signs(2 * mode + 1) = -1.0;
  }
  return signs.asDiagonal() * V * signs.asDiagonal();
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& V) {
  if (V.rows() != V.cols() || V.rows() % 2 != 0 || V.rows() == 0)
    throw DomainError("symplectic_eigenvalues: matrix must be 2n x 2n");
  require_symmetric(V, "symplectic_eigenvalues");
  const int n = static_cast<int>(V.rows()) / 2;
  Eigen::MatrixXd omega_v = symplectic_form(n) * V;
  Eigen::EigenSolver<Eigen::MatrixXd> es(omega_v, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw SolverError("symplectic_eigenvalues: eigen decomposition failed");
  std::vector<double> mods(2 * n);
  for (int i = 0; i < 2 * n; ++i) mods[i] = std::abs(es.eigenvalues()(i));
  std::sort(mods.begin(), mods.end());
  // The spectrum comes in +/- i*nu pairs; average each adjacent pair.
  std::vector<double> nus(n);
  for (int k = 0; k < n; ++k) nus[k] = 0.5 * (mods[2 * k] + mods[2 * k + 1]);
  return nus;
}

double physicality_margin(const Eigen::MatrixXd& V) {
  if (V.rows() != V.cols() || V.rows() % 2 != 0 || V.rows() == 0)
    throw DomainError("physicality_margin: matrix must be 2n x 2n");
  require_symmetric(V, "physicality_margin");
  const int n = static_cast<int>(V.rows()) / 2;
  Eigen::MatrixXcd A = V.cast<std::complex<double>>() +
                       std::complex<double>(0.0, 0.5) *
                           symplectic_form(n).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  if (es.info() != Eigen::Success)
    throw SolverError("physicality_margin: eigen decomposition failed");
  return es.eigenvalues().minCoeff();
}

bool is_physical(const Eigen::MatrixXd& V, double tol) {
  return physicality_margin(V) >= -tol;
}

double log_negativity_bipartite(const Eigen::Matrix<double, 4, 4>& V4) {
  require_symmetric(V4, "log_negativity_bipartite");
  if (min_symplectic(V4) < 0.5 - 1e-9)
    throw PhysicalityError(
        "log_negativity_bipartite: covariance matrix is unphysical "
        "(symplectic eigenvalue below 1/2)");
  Eigen::MatrixXd pt = partial_transpose(V4, {0});
  return neg_from_nu(symplectic_eigenvalues(pt).front());
}

double log_negativity_one_vs_two(const Eigen::Matrix<double, 6, 6>& V6, int single) {
  if (single < 0 || single > 2)
    throw DomainError("log_negativity_one_vs_two: mode slot must be 0, 1 or 2");
  require_symmetric(V6, "log_negativity_one_vs_two");
  if (min_symplectic(V6) < 0.5 - 1e-9)
    throw PhysicalityError(
        "log_negativity_one_vs_two: covariance matrix is unphysical "
        "(symplectic eigenvalue below 1/2)");
  Eigen::MatrixXd pt = partial_transpose(V6, {single});
  return neg_from_nu(symplectic_eigenvalues(pt).front());
}

ContangleResult residual_contangle_detail(const Eigen::Matrix<double, 6, 6>& V6) {
  ContangleResult res;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    double e_whole = log_negativity_one_vs_two(V6, a);
    double e_ab = log_negativity_bipartite(pair_from_triple(V6, a, b));
    double e_ac = log_negativity_bipartite(pair_from_triple(V6, a, c));
    double r = e_whole * e_whole - e_ab * e_ab - e_ac * e_ac;
    if (r < 0) {
      if (r < -1e-9) {
        std::ostringstream msg;
        msg << "residual contangle " << r << " for focus mode " << a
            << " violates monogamy beyond tolerance";
        throw MonogamyError(msg.str());
      }
      r = 0.0;
    }
    res.residuals[a] = r;
    res.one_vs_two[a] = e_whole;
  }
  res.argmin = 0;
  for (int a = 1; a < 3; ++a)
    if (res.residuals[a] < res.residuals[res.argmin] - 1e-12) res.argmin = a;
  res.value = res.residuals[res.argmin];
  return res;
}

double residual_contangle_min(const Eigen::Matrix<double, 6, 6>& V6) {
  return residual_contangle_detail(V6).value;
}

}  // namespace magnomech
