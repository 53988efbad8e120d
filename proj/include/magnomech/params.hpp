#pragma once

#include <optional>
#include <string>

#include "magnomech/config.hpp"

namespace magnomech {

// Crystallographic axis of the applied bias field; fixes the sign of the
// magnon self-Kerr coefficient (100 -> positive, 110 -> negative).
enum class CrystalAxis { axis_100, axis_110 };

// Material and drive-derivation constants for the YIG sphere.  Only the
// derivation helpers and the feasibility check consume these; the solver
// pipeline takes its rates directly from SystemParams.
struct MaterialConstants {
  double verdet = 0;               // Verdet constant, rad / (T m)
  double refractive_index = 0;     // dimensionless
  double spin_density = 0;         // m^-3, enters the cavity-magnon coupling formula
  double sphere_radius = 0;        // m
  double mu0_kan = 0;              // mu0 * k_an product (SI), enters the Kerr formula
  double saturation_M = 0;         // saturation magnetization, A / m
  double gamma_G = 0;              // gyromagnetic ratio, rad / (s T)
  double spin_number_density = 0;  // m^-3, sets the total spin number N
  double drive_field = 0;          // drive magnetic field amplitude, T
  double laser_power = 0;          // cavity drive input power, W
  double laser_frequency = 0;      // cavity drive angular frequency, rad/s
  CrystalAxis axis = CrystalAxis::axis_100;

  double volume() const;       // sphere volume (4/3) pi r^3, m^3
  double spin_number() const;  // N = spin_number_density * volume()
  void validate() const;       // all strictly positive, else ConfigError
};

// Full parameter set for the two-cavity magnomechanical system.
// Convention: detunings, decay rates and cavity-magnon couplings are stored
// in phonon-frequency units (omega_b = 1); mode frequencies and the drive
// amplitudes are stored raw in rad/s with normalized accessors below.
struct SystemParams {
  // angular frequencies, rad/s
  double omega_b = 0;  // phonon frequency; the unit scale
  double omega_1 = 0, omega_2 = 0;  // cavity resonances
  double omega_m = 0;               // magnon resonance
  double omega_0 = 0;               // drive frequency

  // detunings, units of omega_b (delta_m0 is the bare magnon detuning)
  double delta_1 = 0, delta_2 = 0, delta_m0 = 0;

  // amplitude decay rates, units of omega_b
  double kappa_1 = 0, kappa_2 = 0, kappa_m = 0, gamma_b = 0;

  // cavity-magnon couplings, units of omega_b
  double coupling_gamma_1 = 0, coupling_gamma_2 = 0;

  // raw rad/s quantities
  double g_mb = 0;        // bare magnomechanical coupling
  double kerr_K = 0;      // signed magnon self-Kerr coefficient
  double rabi_Omega = 0;  // magnon drive strength
  double drive_E1 = 0, drive_E2 = 0;  // cavity drive strengths

  double temperature = 0;  // bath temperature, K

  // derived thermal occupations (filled by refresh_occupations)
  double n_b = 0, n_m = 0, n_1 = 0, n_2 = 0;

  // When true (default) delta_m0 is interpreted as the mechanically shifted
  // effective magnon detuning held fixed, matching the sweep convention where
  // the detuning axis is the effective one.  When false, the steady-state
  // solver applies the displacement shift g_mb*q_s self-consistently.
  bool delta_m_is_effective = true;

  // Optional fixed Kerr shift (units of omega_b), bypassing self-consistency.
  std::optional<double> delta_K_override;

  std::optional<MaterialConstants> material;

  // normalized accessors (units of omega_b)
  double g_mb_n() const { return g_mb / omega_b; }
  double kerr_K_n() const { return kerr_K / omega_b; }
  double rabi_n() const { return rabi_Omega / omega_b; }
  double drive_E1_n() const { return drive_E1 / omega_b; }
  double drive_E2_n() const { return drive_E2 / omega_b; }

  void refresh_occupations();  // recompute n_b, n_m, n_1, n_2
  void validate() const;       // throws ConfigError on bad values
};

// Bose-Einstein occupation 1/(exp(hbar*omega/kB*T) - 1); exactly 0 at T = 0.
double bose_occupation(double omega, double temperature);

// Load and validate a parameter file (INI layout, sections
// [system], [drive], [bath] and optional [material]).
SystemParams load_params(const std::string& path);
SystemParams params_from_ini(const IniDoc& doc);

// True if (section, key) is a recognized config field; used to validate
// command-line overrides before they silently vanish.
bool known_config_key(const std::string& section, const std::string& key);

// Cavity-magnon coupling from material constants:
//   Gamma = Verdet * (c / n_r) * sqrt(2 / (spin_density * V_sphere))   [rad/s]
double derive_optomagnonic_coupling(const MaterialConstants& mat);

struct DerivedDrives {
  double kerr_K = 0;      // signed, rad/s
  double rabi_Omega = 0;  // rad/s
  double drive_E = 0;     // rad/s
};

// Kerr coefficient, magnon drive and cavity drive amplitudes from material
// constants:  K = mu0_kan * gamma_G^2 / (M^2 V),  Omega = (5/4) gamma_G sqrt(N) H_d,
// E = sqrt(2 kappa P / (hbar omega_L)).  kappa is the cavity amplitude decay
// rate in rad/s (it lives in SystemParams, so it is passed explicitly).
DerivedDrives derive_kerr_and_drives(const MaterialConstants& mat, double kappa);

// Raw (rad/s) view of the normalized rate fields, for unit round-trips.
struct RawRates {
  double omega_b = 0;
  double delta_1 = 0, delta_2 = 0, delta_m0 = 0;
  double kappa_1 = 0, kappa_2 = 0, kappa_m = 0, gamma_b = 0;
  double coupling_gamma_1 = 0, coupling_gamma_2 = 0;
};

RawRates to_raw(const SystemParams& p);
void apply_raw(SystemParams& p, const RawRates& raw);

}  // namespace magnomech
