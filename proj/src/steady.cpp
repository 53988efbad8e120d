#include "magnomech/steady.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

// Closed-form magnon amplitude for a given Kerr shift and effective magnon
// detuning (phonon-frequency units throughout).
cd closed_form_ms(const SystemParams& p, double delta_k, double delta_m) {
  const double g1 = p.coupling_gamma_1, g2 = p.coupling_gamma_2;
  const double e1 = p.drive_E1_n(), e2 = p.drive_E2_n(), om = p.rabi_n();
  const cd a1{p.kappa_1, p.delta_1};
  const cd a2{p.kappa_2, p.delta_2};
  const cd am{p.kappa_m, delta_m + delta_k};
  const cd num = -I * g1 * e1 * a2 - I * g2 * e2 * a1 + om * a1 * a2;
  const cd den = a1 * a2 * am + g1 * g1 * a2 + g2 * g2 * a1;
  double scale = std::abs(a1 * a2 * am) + g1 * g1 * std::abs(a2) + g2 * g2 * std::abs(a1);
  if (std::abs(den) <= 1e-14 * std::max(scale, 1e-300))
    throw SolverError("steady-state denominator vanishes (singular configuration)");
  return num / den;
}

struct Maps {
  const SystemParams& p;
  double delta_k(const cd& ms) const {
    if (p.delta_K_override) return *p.delta_K_override;
    return 2.0 * p.kerr_K_n() * std::norm(ms);
  }
  double q_s(const cd& ms) const { return -p.g_mb_n() * std::norm(ms); }
  double delta_m(const cd& ms) const {
    if (p.delta_m_is_effective) return p.delta_m0;
    return p.delta_m0 + p.g_mb_n() * q_s(ms);
  }
  cd step(const cd& ms) const { return closed_form_ms(p, delta_k(ms), delta_m(ms)); }
};

void finish(SteadyState& ss, const SystemParams& p, const Maps& maps, const cd& ms) {
  ss.m_s = ms;
  ss.q_s = maps.q_s(ms);
  ss.p_s = 0.0;
  ss.delta_K = maps.delta_k(ms);
  ss.delta_m = maps.delta_m(ms);
  const cd a1{p.kappa_1, p.delta_1};
  const cd a2{p.kappa_2, p.delta_2};
  ss.c1_s = (p.drive_E1_n() - I * p.coupling_gamma_1 * ms) / a1;
  ss.c2_s = (p.drive_E2_n() - I * p.coupling_gamma_2 * ms) / a2;
  double mod = std::abs(ms);
  ss.purity_ratio = mod > 0 ? std::abs(ms.real()) / mod : 0.0;
  // G = i sqrt2 g m_s mapped to its real part.
  ss.g_eff = -std::sqrt(2.0) * p.g_mb_n() * ms.imag();
  ss.converged = true;
}

}  // namespace

SteadyState solve_steady_state(const SystemParams& params, const SteadySolveOptions& options) {
  params.validate();
  if (!(options.tol > 0) || !(options.damping > 0) || options.damping > 1.0 ||
      options.max_iterations < 1)
    throw DomainError("solve_steady_state: invalid solver options");

  const Maps maps{params};
  SteadyState ss;

  const bool kerr_fixed = params.delta_K_override.has_value() || params.kerr_K == 0.0;
  if (kerr_fixed && params.delta_m_is_effective) {
    // The map has no m_s dependence: the closed form is exact in one pass.
    cd ms = closed_form_ms(params, params.delta_K_override.value_or(0.0), params.delta_m0);
    finish(ss, params, maps, ms);
    ss.iterations = 1;
    ss.residual = 0.0;
    return ss;
  }

  // Damped Picard iteration continued from the zero-Kerr closed form.
  const double beta = options.damping;
  cd ms = closed_form_ms(params, params.delta_K_override.value_or(0.0), params.delta_m0);
  double prev_step = std::numeric_limits<double>::infinity();
  int growing = 0;
  cd ms_prev = ms, ms_prev2 = ms;
  for (int it = 1; it <= options.max_iterations; ++it) {
    cd target = maps.step(ms);
    cd next = (1.0 - beta) * ms + beta * target;
    double step = std::abs(next - ms);
    double scale = std::max(std::abs(next), 1e-300);
    if (!std::isfinite(step) || !std::isfinite(std::abs(next)))
      throw SolverError("steady-state iteration diverged to non-finite values");
    ms_prev2 = ms_prev;
    ms_prev = ms;
    ms = next;
    if (step <= options.tol * scale) {
      finish(ss, params, maps, ms);
      ss.iterations = it;
      ss.residual = std::abs(ms - maps.step(ms)) / std::max(std::abs(ms), 1e-300);
      return ss;
    }
    growing = (step > prev_step) ? growing + 1 : 0;
    prev_step = step;
    if (growing > 200) {
      std::ostringstream msg;
      msg << "steady-state iteration not converging (step growing for " << growing
          << " iterations, last relative step " << step / scale
          << "); possible bistability or out-of-range drive";
      throw SolverError(msg.str());
    }
  }
  // Out of iterations: distinguish a period-2 oscillation (bistability
  // signature) from slow convergence.
  double step = std::abs(ms - ms_prev);
  double cycle = std::abs(ms - ms_prev2);
  std::ostringstream msg;
  if (cycle < 0.01 * step)
    msg << "steady-state iteration oscillates between two fixed points "
        << "(possible bistability); last relative step "
        << step / std::max(std::abs(ms), 1e-300);
  else
    msg << "steady-state iteration did not converge within " << options.max_iterations
        << " iterations; last relative step " << step / std::max(std::abs(ms), 1e-300);
  throw SolverError(msg.str());
}

std::complex<double> approximate_ms(const SystemParams& params) {
  const double d1 = params.delta_1, d2 = params.delta_2, dm = params.delta_m0;
  const double g1 = params.coupling_gamma_1, g2 = params.coupling_gamma_2;
  const double e1 = params.drive_E1_n(), e2 = params.drive_E2_n(), om = params.rabi_n();
  double num = d2 * g1 * e1 + d1 * g2 * e2 - om * d1 * d2;
  double den = d1 * d2 * dm - d1 * g2 * g2 - d2 * g1 * g1;
  double scale = std::abs(d1 * d2 * dm) + std::abs(d1) * g2 * g2 + std::abs(d2) * g1 * g1;
  if (std::abs(den) <= 1e-14 * std::max(scale, 1e-300))
    throw SolverError("approximate_ms: denominator vanishes (singular configuration)");
  return cd{0.0, num / den};
}

bool dispersive_regime(const SystemParams& params, double ratio) {
  double min_det = std::min({std::abs(params.delta_1), std::abs(params.delta_2),
                             std::abs(params.delta_m0)});
  double max_rate = std::max({params.kappa_1, params.kappa_2, params.kappa_m});
  if (max_rate == 0) return true;
  return min_det >= ratio * max_rate;
}

double effective_coupling(const SteadyState& ss, const SystemParams& params,
                          double purity_tol) {
  if (!ss.converged) throw SolverError("effective_coupling: steady state not converged");
  double mod = std::abs(ss.m_s);
  if (mod == 0) return 0.0;
  double ratio = std::abs(ss.m_s.real()) / mod;
  if (ratio > purity_tol) {
    std::ostringstream msg;
    msg << "effective_coupling: mean field not imaginary (|Re m_s|/|m_s| = " << ratio
        << " exceeds tolerance " << purity_tol << ")";
    throw SolverError(msg.str());
  }
  return -std::sqrt(2.0) * params.g_mb_n() * ss.m_s.imag();
}

FeasibilityReport check_feasibility(const SteadyState& ss, const SystemParams& params,
                                    const FeasibilityThresholds& thresholds) {
  if (!params.material)
    throw ConfigError("check_feasibility: material constants required (total spin number)");
  FeasibilityReport r;
  double mod = std::abs(ss.m_s);
  r.magnon_number = mod * mod;
  r.spin_bound = 5.0 * params.material->spin_number();
  r.excitation_ratio = r.magnon_number > 0 ? r.magnon_number / r.spin_bound : 0.0;
  r.low_excitation_ok = r.excitation_ratio <= thresholds.excitation;
  r.kerr_drive_term = std::abs(params.kerr_K) * mod * mod * mod;
  if (r.kerr_drive_term == 0)
    r.kerr_drive_ratio = 0.0;
  else if (params.rabi_Omega > 0)
    r.kerr_drive_ratio = r.kerr_drive_term / params.rabi_Omega;
  else
    r.kerr_drive_ratio = std::numeric_limits<double>::infinity();
  r.kerr_negligible = r.kerr_drive_ratio <= thresholds.kerr;
  return r;
}

}  // namespace magnomech
