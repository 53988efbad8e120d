#pragma once

#include <complex>

#include "magnomech/params.hpp"

namespace magnomech {

// Steady-state mean values of the four modes.  Amplitudes are dimensionless;
// detunings/couplings are in phonon-frequency units.
struct SteadyState {
  std::complex<double> m_s{0.0, 0.0};   // magnon amplitude
  std::complex<double> c1_s{0.0, 0.0};  // cavity-1 amplitude
  std::complex<double> c2_s{0.0, 0.0};  // cavity-2 amplitude
  double q_s = 0;       // mechanical displacement, -(g_mb/omega_b)|m_s|^2
  double p_s = 0;       // mechanical momentum, exactly 0
  double delta_K = 0;   // Kerr shift 2 K |m_s|^2 (or the fixed override)
  double delta_m = 0;   // effective magnon detuning entering the dynamics
  double g_eff = 0;     // real effective magnomechanical coupling, Re(i sqrt2 g m_s)
  double purity_ratio = 0;  // |Re m_s| / |m_s| (0 for m_s = 0)
  double residual = 0;      // relative fixed-point residual of the m_s equation
  int iterations = 0;
  bool converged = false;
};

struct SteadySolveOptions {
  double tol = 1e-12;        // relative step tolerance of the fixed-point iteration
  int max_iterations = 10000;
  double damping = 0.5;      // Picard damping factor in (0, 1]
};

// Solve the nonlinear mean-value equations self-consistently in the Kerr
// shift (and, in bare-detuning mode, in the mechanical displacement shift).
// Continuation starts from the closed-form zero-Kerr solution; a fixed
// delta_K_override skips the Kerr self-consistency.
SteadyState solve_steady_state(const SystemParams& params,
                               const SteadySolveOptions& options = {});

// Large-detuning approximation of the magnon amplitude: a purely imaginary
// closed form, used as cross-check and diagnostic.
std::complex<double> approximate_ms(const SystemParams& params);

// True when every detuning magnitude exceeds `ratio` times every decay rate,
// the regime where approximate_ms is trustworthy.
bool dispersive_regime(const SystemParams& params, double ratio = 5.0);

// Real effective coupling G = Re(i sqrt2 g_mb m_s) in phonon-frequency units.
// Throws when the mean field is not imaginary to within purity_tol
// (|Re m_s|/|m_s| > purity_tol), signalling that the real-number mapping
// discards a non-negligible component; pass purity_tol >= 1 to disable.
double effective_coupling(const SteadyState& ss, const SystemParams& params,
                          double purity_tol = 1e-3);

struct FeasibilityReport {
  double magnon_number = 0;     // |m_s|^2
  double spin_bound = 0;        // 5 N
  double excitation_ratio = 0;  // |m_s|^2 / (5 N)
  bool low_excitation_ok = false;
  double kerr_drive_term = 0;   // |K_r| |m_s|^3, rad/s
  double kerr_drive_ratio = 0;  // |K_r| |m_s|^3 / Omega
  bool kerr_negligible = false;
};

struct FeasibilityThresholds {
  double excitation = 1e-2;  // |m_s|^2/(5N) at or below this -> low-excitation ok
  double kerr = 0.1;         // K|m_s|^3/Omega at or below this -> Kerr negligible
};

// Diagnostic comparison of the drive strength against the Kerr term and of
// the magnon excitation against the spin bound.  Requires material constants
// (for the total spin number N).
FeasibilityReport check_feasibility(const SteadyState& ss, const SystemParams& params,
                                    const FeasibilityThresholds& thresholds = {});

}  // namespace magnomech
