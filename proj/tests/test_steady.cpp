#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "magnomech/constants.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/steady.hpp"
#include "support.hpp"

using namespace magnomech;
namespace cn = magnomech::constants;
using support::baseline_params;

TEST_CASE("baseline fixed-shift solve is the exact closed form in one pass") {
  SystemParams p = baseline_params();
  p.delta_K_override = 0.0;
  SteadyState ss = solve_steady_state(p);

  CHECK(ss.converged);
  CHECK(ss.iterations == 1);
  CHECK(ss.residual == 0.0);
  CHECK(ss.m_s.real() == doctest::Approx(1517020.212728).epsilon(1e-9));
  CHECK(ss.m_s.imag() == doctest::Approx(-8296712.064048).epsilon(1e-9));
  CHECK(ss.q_s == doctest::Approx(-2134103.441987).epsilon(1e-9));
  CHECK(ss.p_s == 0.0);
  CHECK(ss.delta_K == 0.0);
  CHECK(ss.delta_m == 1.0);
  CHECK(ss.purity_ratio == doctest::Approx(0.179864).epsilon(1e-4));
  CHECK(ss.g_eff / p.coupling_gamma_1 == doctest::Approx(1.099999005383).epsilon(1e-9));

  // cavity amplitudes satisfy their own steady-state equations
  const std::complex<double> i{0.0, 1.0};
  std::complex<double> a1{p.kappa_1, p.delta_1}, a2{p.kappa_2, p.delta_2};
  std::complex<double> r1 = a1 * ss.c1_s - (p.drive_E1_n() - i * p.coupling_gamma_1 * ss.m_s);
  std::complex<double> r2 = a2 * ss.c2_s - (p.drive_E2_n() - i * p.coupling_gamma_2 * ss.m_s);
  CHECK(std::abs(r1) / std::abs(ss.c1_s) < 1e-12);
  CHECK(std::abs(r2) / std::abs(ss.c2_s) < 1e-12);
}

TEST_CASE("self-consistent Kerr shift on both branches") {
  SystemParams p = baseline_params();  // kerr = +1e-15 omega_b

  SteadyState plus = solve_steady_state(p);
  CHECK(plus.converged);
  CHECK(plus.iterations > 1);
  CHECK(plus.residual < 1e-10);
  CHECK(plus.delta_K == doctest::Approx(0.115404130799).epsilon(1e-6));
  CHECK(plus.g_eff / p.coupling_gamma_1 == doctest::Approx(0.994416217430).epsilon(1e-6));

  p.kerr_K = -p.kerr_K;
  SteadyState minus = solve_steady_state(p);
  CHECK(minus.delta_K == doctest::Approx(-0.235902505625).epsilon(1e-6));
  CHECK(minus.g_eff / p.coupling_gamma_1 == doctest::Approx(1.397019637446).epsilon(1e-6));

  // shift = 2 K |m_s|^2 identity on the converged state
  CHECK(plus.delta_K
            == doctest::Approx(2.0 * 1e-15 * std::norm(plus.m_s)).epsilon(1e-9));
  CHECK(minus.delta_K
            == doctest::Approx(-2.0 * 1e-15 * std::norm(minus.m_s)).epsilon(1e-9));

  // magnon numbers relative to the zero-shift solution
  SystemParams z = baseline_params();
  z.delta_K_override = 0.0;
  double n0 = std::norm(solve_steady_state(z).m_s);
  CHECK(std::norm(plus.m_s) / n0 == doctest::Approx(0.8111).epsilon(1e-3));
  CHECK(std::norm(minus.m_s) / n0 == doctest::Approx(1.6581).epsilon(1e-3));
}

TEST_CASE("fixing the converged shift reproduces the self-consistent coupling") {
  SystemParams p = baseline_params();
  SteadyState self = solve_steady_state(p);

  SystemParams q = baseline_params();
  q.delta_K_override = self.delta_K;
  SteadyState fixed = solve_steady_state(q);
  CHECK(fixed.iterations == 1);
  CHECK(fixed.g_eff == doctest::Approx(self.g_eff).epsilon(1e-9));
  CHECK(std::abs(fixed.m_s - self.m_s) / std::abs(self.m_s) < 1e-9);
}

TEST_CASE("solution varies continuously with the Kerr coefficient near zero") {
  SystemParams z = baseline_params();
  z.delta_K_override = 0.0;
  double n0 = std::norm(solve_steady_state(z).m_s);

  auto ratio_at = [&](double kerr_n) {
    SystemParams p = baseline_params();
    p.kerr_K = kerr_n * p.omega_b;
    return std::norm(solve_steady_state(p).m_s) / n0;
  };

  // half the nominal coefficient: both signs stay within 50% of the
  // zero-shift magnon number, closer still at a quarter
  CHECK(ratio_at(5e-16) == doctest::Approx(0.8893).epsilon(1e-3));
  CHECK(ratio_at(-5e-16) == doctest::Approx(1.1814).epsilon(1e-3));
  CHECK(ratio_at(2.5e-16) == doctest::Approx(0.9392).epsilon(1e-3));
  CHECK(ratio_at(-2.5e-16) == doctest::Approx(1.0772).epsilon(1e-3));

  // sign direction of the shift follows the sign of the coefficient
  SystemParams p = baseline_params();
  CHECK(solve_steady_state(p).delta_K > 0.0);
  p.kerr_K = -p.kerr_K;
  CHECK(solve_steady_state(p).delta_K < 0.0);
}

TEST_CASE("large-detuning approximation: imaginary, within 5% in modulus") {
  SystemParams p = baseline_params();
  p.delta_1 = 1.0;  // symmetric-detuning configuration of the approximation
  p.delta_2 = 1.0;
  p.delta_m0 = 1.0;

  std::complex<double> approx = approximate_ms(p);
  CHECK(approx.real() == 0.0);
  CHECK(approx.imag() == doctest::Approx(-6.909276e6).epsilon(1e-6));

  p.delta_K_override = 0.0;
  std::complex<double> full = solve_steady_state(p).m_s;
  double rel = std::abs(std::abs(approx) - std::abs(full)) / std::abs(full);
  CHECK(rel < 0.05);
  CHECK(rel > 0.01);  // genuinely approximate, not an identity
  CHECK(approx.imag() * full.imag() > 0.0);
}

TEST_CASE("approximation rejects a vanishing denominator") {
  SystemParams p = baseline_params();
  p.delta_1 = 1.0;
  p.delta_2 = 1.0;
  p.delta_m0 = p.coupling_gamma_1 * p.coupling_gamma_1
             + p.coupling_gamma_2 * p.coupling_gamma_2;  // d1 d2 dm = d1 g2^2 + d2 g1^2
  CHECK_THROWS_AS(approximate_ms(p), SolverError);
}

TEST_CASE("dispersive-regime predicate") {
  SystemParams p = baseline_params();
  CHECK(dispersive_regime(p));         // min |detuning| = 1, max rate = 0.2, ratio 5
  CHECK_FALSE(dispersive_regime(p, 5.1));
  p.kappa_m = 0.5;
  CHECK_FALSE(dispersive_regime(p));
  p.kappa_1 = p.kappa_2 = p.kappa_m = 0.0;
  CHECK(dispersive_regime(p));
}

TEST_CASE("effective coupling guards the real-part discard") {
  SystemParams p = baseline_params();
  p.delta_K_override = 0.0;
  SteadyState ss = solve_steady_state(p);

  // baseline mean field has an 18% real component: strict tolerance refuses
  CHECK_THROWS_WITH_AS(effective_coupling(ss, p), doctest::Contains("not imaginary"),
                       SolverError);
  // relaxed tolerance returns the imaginary-part mapping, as stored in g_eff
  double g = effective_coupling(ss, p, 1.0);
  CHECK(g == doctest::Approx(-std::sqrt(2.0) * p.g_mb_n() * ss.m_s.imag()).epsilon(1e-15));
  CHECK(g == doctest::Approx(ss.g_eff).epsilon(1e-15));
  CHECK(g / p.coupling_gamma_1 == doctest::Approx(1.099999005383).epsilon(1e-9));

  SteadyState dark;
  dark.converged = true;  // m_s = 0
  CHECK(effective_coupling(dark, p) == 0.0);

  SteadyState unconverged;
  CHECK_THROWS_AS(effective_coupling(unconverged, p), SolverError);
}

TEST_CASE("solver option validation") {
  SystemParams p = baseline_params();
  SteadySolveOptions o;
  o.damping = 0.0;
  CHECK_THROWS_AS(solve_steady_state(p, o), DomainError);
  o.damping = 1.5;
  CHECK_THROWS_AS(solve_steady_state(p, o), DomainError);
  o = {};
  o.tol = 0.0;
  CHECK_THROWS_AS(solve_steady_state(p, o), DomainError);
  o = {};
  o.max_iterations = 0;
  CHECK_THROWS_AS(solve_steady_state(p, o), DomainError);

  // undamped Picard is a valid choice on the one-pass path
  o = {};
  o.damping = 1.0;
  SystemParams q = baseline_params();
  q.delta_K_override = 0.0;
  CHECK(solve_steady_state(q, o).converged);
}

TEST_CASE("iteration budget exhaustion reports non-convergence") {
  SystemParams p = baseline_params();  // self-consistent branch needs ~31 iterations
  SteadySolveOptions o;
  o.max_iterations = 1;
  CHECK_THROWS_WITH_AS(solve_steady_state(p, o), doctest::Contains("did not converge"),
                       SolverError);
}

TEST_CASE("bare-detuning mode applies the displacement shift self-consistently") {
  SystemParams p = baseline_params();
  p.delta_K_override = 0.0;
  p.delta_m_is_effective = false;
  SteadyState ss = solve_steady_state(p);
  CHECK(ss.converged);
  CHECK(ss.iterations > 1);
  CHECK(ss.delta_m < p.delta_m0);
  double g = p.g_mb_n();
  CHECK(ss.delta_m == doctest::Approx(p.delta_m0 - g * g * std::norm(ss.m_s)).epsilon(1e-9));
  CHECK(ss.delta_m == doctest::Approx(p.delta_m0 + g * ss.q_s).epsilon(1e-9));
}

TEST_CASE("invalid parameters are rejected before solving") {
  SystemParams p = baseline_params();
  p.kappa_1 = -0.1;
  CHECK_THROWS_AS(solve_steady_state(p), ConfigError);
}

TEST_CASE("feasibility: 250 um sphere, drive dominates the Kerr term") {
  SystemParams p = baseline_params();
  MaterialConstants m = support::baseline_material();
  m.sphere_radius = 125.0e-6;
  p.material = m;
  p.rabi_Omega = 7.1e14;
  p.kerr_K = cn::two_pi * 6.4e-9;

  SteadyState ss;
  ss.converged = true;
  ss.m_s = {0.0, -std::cbrt(5.7e13 / p.kerr_K)};  // |K||m_s|^3 = 5.7e13 by construction

  FeasibilityReport r = check_feasibility(ss, p);
  CHECK(r.kerr_drive_term == doctest::Approx(5.7e13).epsilon(1e-9));
  CHECK(r.kerr_drive_ratio == doctest::Approx(5.7e13 / 7.1e14).epsilon(1e-9));
  CHECK(r.kerr_negligible);
  CHECK(r.magnon_number == doctest::Approx(1.26187e14).epsilon(1e-3));
  CHECK(r.spin_bound == doctest::Approx(1.72624e17).epsilon(1e-3));
  CHECK(r.excitation_ratio == doctest::Approx(7.31e-4).epsilon(1e-2));
  CHECK(r.low_excitation_ok);
}

TEST_CASE("feasibility: 0.1 mm sphere, Kerr term comparable to the drive") {
  SystemParams p = baseline_params();
  p.material = support::baseline_material();  // 50 um radius
  p.rabi_Omega = 7.5e14;
  p.kerr_K = cn::two_pi * 1.0e-7;

  SteadyState ss;
  ss.converged = true;
  ss.m_s = {0.0, -std::cbrt(7.8e14 / p.kerr_K)};

  FeasibilityReport r = check_feasibility(ss, p);
  CHECK(r.kerr_drive_ratio == doctest::Approx(1.04).epsilon(1e-3));
  CHECK_FALSE(r.kerr_negligible);
  CHECK(r.spin_bound == doctest::Approx(1.10479e16).epsilon(1e-3));
  CHECK(r.excitation_ratio == doctest::Approx(1.0457e-2).epsilon(1e-3));
  CHECK_FALSE(r.low_excitation_ok);  // just over the 1% excitation bound

  FeasibilityThresholds relaxed;
  relaxed.excitation = 0.02;
  CHECK(check_feasibility(ss, p, relaxed).low_excitation_ok);
}

TEST_CASE("feasibility edge cases") {
  SystemParams p = baseline_params();  // no material attached
  SteadyState ss;
  ss.converged = true;
  ss.m_s = {0.0, 1.0};
  CHECK_THROWS_WITH_AS(check_feasibility(ss, p), doctest::Contains("material"), ConfigError);

  p.material = support::baseline_material();
  SteadyState dark;
  dark.converged = true;
  FeasibilityReport r = check_feasibility(dark, p);
  CHECK(r.magnon_number == 0.0);
  CHECK(r.excitation_ratio == 0.0);
  CHECK(r.kerr_drive_ratio == 0.0);
  CHECK(r.kerr_negligible);
  CHECK(r.low_excitation_ok);
}
