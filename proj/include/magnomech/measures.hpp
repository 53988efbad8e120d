#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace magnomech {

// Quadrature-pair slots in the 8x8 covariance matrix.
enum class Mode : int { b = 0, m = 1, c1 = 2, c2 = 3 };

struct ModeSelection {
  std::vector<Mode> modes;  // distinct, order preserved in the reduced matrix
  ModeSelection() = default;
  ModeSelection(std::initializer_list<Mode> m) : modes(m) {}
};

// Principal submatrix of V on the selected quadrature pairs, in listed order.
Eigen::MatrixXd reduce_cm(const Eigen::Matrix<double, 8, 8>& V, const ModeSelection& sel);

// Momentum-sign flip (p -> -p) on each mode in `party`; indices address mode
// slots of the reduced matrix (0..n-1). Involution: applying twice is identity.
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& V, const std::vector<int>& party);

// Moduli of eig(Omega*V) collapsed from +/- pairs to n values, ascending.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& V);

// min eig(V + (i/2)*Omega); >= 0 up to tolerance for a physical Gaussian state.
double physicality_margin(const Eigen::MatrixXd& V);
bool is_physical(const Eigen::MatrixXd& V, double tol = 1e-9);

// E_N = max[0, -ln 2 nu_minus] with nu_minus from the partial transpose of the
// first listed mode. Throws PhysicalityError for unphysical input.
double log_negativity_bipartite(const Eigen::Matrix<double, 4, 4>& V4);

// One-vs-two-mode negativity of a 6x6 covariance matrix; `single` is the mode
// slot (0..2) set against the remaining pair.
double log_negativity_one_vs_two(const Eigen::Matrix<double, 6, 6>& V6, int single);

struct ContangleResult {
  double value = 0.0;                        // minimal residual contangle
  int argmin = 0;                            // focus mode slot of the minimum
  std::array<double, 3> residuals{};         // per focus mode, clamped
  std::array<double, 3> one_vs_two{};        // E(alpha | beta gamma) per focus mode
};

// Residual contangle E^2(a|bc) - E^2(a|b) - E^2(a|c) for each focus mode;
// values in [-1e-9, 0) clamp to 0, lower values throw MonogamyError.
ContangleResult residual_contangle_detail(const Eigen::Matrix<double, 6, 6>& V6);
double residual_contangle_min(const Eigen::Matrix<double, 6, 6>& V6);

}  // namespace magnomech
