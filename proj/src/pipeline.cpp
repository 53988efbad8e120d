#include "magnomech/pipeline.hpp"

#include <cmath>

#include "magnomech/drift.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/lyapunov.hpp"
#include "magnomech/measures.hpp"
#include "magnomech/steady.hpp"

namespace magnomech {

namespace {
constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

double compute_measure(const Eigen::Matrix<double, 8, 8>& V, MeasureId id) {
  auto bip = [&](Mode a, Mode b) {
    Eigen::Matrix<double, 4, 4> V4 = reduce_cm(V, ModeSelection{a, b});
    return log_negativity_bipartite(V4);
  };
  auto trip = [&](Mode a, Mode b, Mode c) {
    Eigen::Matrix<double, 6, 6> V6 = reduce_cm(V, ModeSelection{a, b, c});
    return residual_contangle_min(V6);
  };
  switch (id) {
    case MeasureId::E_c1c2: return bip(Mode::c1, Mode::c2);
    case MeasureId::E_c1m:  return bip(Mode::c1, Mode::m);
    case MeasureId::E_c1b:  return bip(Mode::c1, Mode::b);
    case MeasureId::E_mb:   return bip(Mode::m, Mode::b);
    case MeasureId::R_c1mb: return trip(Mode::c1, Mode::m, Mode::b);
    case MeasureId::R_c1mc2: return trip(Mode::c1, Mode::m, Mode::c2);
  }
  throw DomainError("unknown measure id");
}
}  // namespace

const char* kerr_branch_name(KerrBranch b) {
  switch (b) {
    case KerrBranch::zero: return "zero";
    case KerrBranch::plus: return "plus";
    case KerrBranch::minus: return "minus";
  }
  return "?";
}

const char* measure_name(MeasureId id) {
  switch (id) {
    case MeasureId::E_c1c2: return "E_c1c2";
    case MeasureId::E_c1m:  return "E_c1m";
    case MeasureId::E_c1b:  return "E_c1b";
    case MeasureId::E_mb:   return "E_mb";
    case MeasureId::R_c1mb: return "R_c1mb";
    case MeasureId::R_c1mc2: return "R_c1mc2";
  }
  return "?";
}

std::optional<MeasureId> measure_from_name(const std::string& name) {
  for (MeasureId id : all_measures)
    if (name == measure_name(id)) return id;
  return std::nullopt;
}

bool measure_is_tripartite(MeasureId id) {
  return id == MeasureId::R_c1mb || id == MeasureId::R_c1mc2;
}

PointResult::PointResult() {
  values.fill(nan_v);
  V.setZero();
}

EntanglementReport::EntanglementReport()
    : E_c1c2(nan_v), E_c1m(nan_v), E_c1b(nan_v), E_mb(nan_v), R_c1mb(nan_v),
      R_c1mc2(nan_v) {}

PointResult evaluate_point(const SystemParams& params, const PointSpec& spec,
                           const std::vector<MeasureId>& measures) {
  SystemParams p = params;
  if (spec.delta_1) p.delta_1 = *spec.delta_1;
  if (spec.delta_2) p.delta_2 = *spec.delta_2;
  if (spec.delta_m) p.delta_m0 = *spec.delta_m;

  const bool kerr_known =
      spec.branch == KerrBranch::zero || spec.fixed_delta_k;
  double sign = spec.branch == KerrBranch::minus ? -1.0 : 1.0;

  PointResult res;
  double delta_k, delta_m, g_eff;
  if (spec.g_over_gamma && kerr_known && p.delta_m_is_effective) {
    // Drift inputs fully determined without a steady solve.
    delta_k = spec.branch == KerrBranch::zero ? 0.0 : sign * spec.delta_k_magnitude;
    delta_m = p.delta_m0;
    g_eff = *spec.g_over_gamma * p.coupling_gamma_1;
  } else {
    if (spec.branch == KerrBranch::zero) {
      p.delta_K_override = 0.0;
    } else if (spec.fixed_delta_k) {
      p.delta_K_override = sign * spec.delta_k_magnitude;
    } else {
      p.delta_K_override.reset();
      p.kerr_K = sign * std::abs(p.kerr_K);
    }
    SteadyState ss = solve_steady_state(p);
    delta_k = ss.delta_K;
    delta_m = ss.delta_m;
    g_eff = spec.g_over_gamma ? *spec.g_over_gamma * p.coupling_gamma_1 : ss.g_eff;
    res.magnon_number = std::norm(ss.m_s);
  }

  res.delta_k = delta_k;
  res.delta_m = delta_m;
  res.g_eff = g_eff;
  res.g_over_gamma =
      p.coupling_gamma_1 > 0 ? g_eff / p.coupling_gamma_1 : nan_v;

  DriftModel model = build_drift_matrix_explicit(p, g_eff, delta_k, delta_m);
  res.max_eig_real = model.eigenvalues.front().real();
  res.stable = check_stability(model);
  if (!res.stable) return res;

  CovarianceMatrix cm = solve_lyapunov(model.M, model.D);
  res.V = cm.V;
  for (MeasureId id : measures)
    res.values[static_cast<int>(id)] = compute_measure(cm.V, id);
  return res;
}

EntanglementReport full_report(const SystemParams& params, const PointSpec& spec) {
  std::vector<MeasureId> ms(all_measures.begin(), all_measures.end());
  PointResult pr = evaluate_point(params, spec, ms);
  EntanglementReport rep;
  rep.stable = pr.stable;
  rep.E_c1c2 = pr.values[0];
  rep.E_c1m = pr.values[1];
  rep.E_c1b = pr.values[2];
  rep.E_mb = pr.values[3];
  rep.R_c1mb = pr.values[4];
  rep.R_c1mc2 = pr.values[5];
  rep.delta_1 = spec.delta_1.value_or(params.delta_1);
  rep.delta_2 = spec.delta_2.value_or(params.delta_2);
  rep.delta_m = pr.delta_m;
  rep.delta_k = pr.delta_k;
  rep.g_over_gamma = pr.g_over_gamma;
  rep.magnon_number = pr.magnon_number;
  return rep;
}

}  // namespace magnomech
