#pragma once

#include <Eigen/Dense>
#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "magnomech/params.hpp"

namespace magnomech {

// Sign convention of the Kerr shift at an evaluation point.
enum class KerrBranch : int { zero = 0, plus = 1, minus = 2 };
const char* kerr_branch_name(KerrBranch b);

// Entanglement measures the pipeline can evaluate, ordered as reported.
enum class MeasureId : int { E_c1c2 = 0, E_c1m, E_c1b, E_mb, R_c1mb, R_c1mc2 };
inline constexpr int measure_count = 6;
inline constexpr std::array<MeasureId, measure_count> all_measures = {
    MeasureId::E_c1c2, MeasureId::E_c1m, MeasureId::E_c1b,
    MeasureId::E_mb,   MeasureId::R_c1mb, MeasureId::R_c1mc2};
const char* measure_name(MeasureId id);
std::optional<MeasureId> measure_from_name(const std::string& name);
bool measure_is_tripartite(MeasureId id);

// One evaluation point: optional overrides on top of the base parameters.
// Detunings in phonon-frequency units; g_over_gamma replaces the effective
// magnomechanical coupling in the drift matrix with the given multiple of
// coupling_gamma_1.
struct PointSpec {
  std::optional<double> delta_1;
  std::optional<double> delta_2;
  std::optional<double> delta_m;
  KerrBranch branch = KerrBranch::zero;
  bool fixed_delta_k = false;     // +/- delta_k_magnitude instead of self-consistent
  double delta_k_magnitude = 0.1;
  std::optional<double> g_over_gamma;
};

struct PointResult {
  bool stable = false;
  double delta_k = std::numeric_limits<double>::quiet_NaN();
  double delta_m = std::numeric_limits<double>::quiet_NaN();
  double g_eff = std::numeric_limits<double>::quiet_NaN();  // drift coupling used
  double g_over_gamma = std::numeric_limits<double>::quiet_NaN();
  double magnon_number = std::numeric_limits<double>::quiet_NaN();  // |m_s|^2, NaN if skipped
  double max_eig_real = std::numeric_limits<double>::quiet_NaN();
  std::array<double, measure_count> values{};  // NaN when not requested or unstable
  Eigen::Matrix<double, 8, 8> V;               // covariance, valid iff stable
  PointResult();
};

// Full evaluation chain: overrides -> steady state (skipped when the drift
// inputs are already fixed) -> drift -> stability -> covariance -> measures.
// Instability is a flagged result; solver failures throw.
PointResult evaluate_point(const SystemParams& params, const PointSpec& spec,
                           const std::vector<MeasureId>& measures);

// All four bipartite log-negativities plus both minimal residual contangles,
// with an echo of the parameters that produced them.
struct EntanglementReport {
  double E_c1c2, E_c1m, E_c1b, E_mb, R_c1mb, R_c1mc2;  // NaN when not stable
  bool stable = false;
  double delta_1 = 0.0, delta_2 = 0.0, delta_m = 0.0, delta_k = 0.0;
  double g_over_gamma = 0.0;
  double magnon_number = std::numeric_limits<double>::quiet_NaN();
  EntanglementReport();
};

EntanglementReport full_report(const SystemParams& params, const PointSpec& spec = {});

}  // namespace magnomech
