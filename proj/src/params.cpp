#include "magnomech/params.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "magnomech/constants.hpp"
#include "magnomech/errors.hpp"

namespace magnomech {

namespace cn = constants;

double MaterialConstants::volume() const {
  return (4.0 / 3.0) * cn::pi * sphere_radius * sphere_radius * sphere_radius;
}

double MaterialConstants::spin_number() const { return spin_number_density * volume(); }

void MaterialConstants::validate() const {
  struct Field {
    const char* name;
    double value;
  };
  const Field fields[] = {
      {"verdet", verdet},
      {"refractive_index", refractive_index},
      {"spin_density", spin_density},
      {"sphere_radius", sphere_radius},
      {"mu0_kan", mu0_kan},
      {"saturation_m", saturation_M},
      {"gamma_g", gamma_G},
      {"spin_number_density", spin_number_density},
      {"drive_field", drive_field},
      {"laser_power", laser_power},
      {"laser_frequency", laser_frequency},
  };
  for (const auto& f : fields) {
    if (!(f.value > 0) || !std::isfinite(f.value)) {
      std::ostringstream msg;
      msg << "material constant " << f.name << " must be strictly positive, got " << f.value;
      throw ConfigError(msg.str());
    }
  }
}

double bose_occupation(double omega, double temperature) {
  if (!(omega > 0))
    throw DomainError("bose_occupation: frequency must be positive, got " +
                      std::to_string(omega));
  if (temperature < 0)
    throw DomainError("bose_occupation: temperature must be nonnegative, got " +
                      std::to_string(temperature));
  if (temperature == 0) return 0.0;
  double x = cn::hbar * omega / (cn::k_boltzmann * temperature);
  if (!std::isfinite(x) || x > 745.0) return 0.0;  // exp would overflow; occupation underflows
  return 1.0 / std::expm1(x);
}

void SystemParams::refresh_occupations() {
  n_b = bose_occupation(omega_b, temperature);
  n_m = bose_occupation(omega_m, temperature);
  n_1 = bose_occupation(omega_1, temperature);
  n_2 = bose_occupation(omega_2, temperature);
}

void SystemParams::validate() const {
  if (!(omega_b > 0)) throw ConfigError("phonon frequency omega_b must be positive");
  if (!(omega_1 > 0) || !(omega_2 > 0) || !(omega_m > 0))
    throw ConfigError("mode frequencies must be positive");
  struct Rate {
    const char* name;
    double value;
  };
  const Rate rates[] = {{"kappa_1", kappa_1},
                        {"kappa_2", kappa_2},
                        {"kappa_m", kappa_m},
                        {"gamma_b", gamma_b}};
  for (const auto& r : rates)
    if (r.value < 0)
      throw ConfigError(std::string("negative decay rate ") + r.name + " = " +
                        std::to_string(r.value));
  if (coupling_gamma_1 < 0 || coupling_gamma_2 < 0)
    throw ConfigError("cavity-magnon couplings must be nonnegative");
  if (temperature < 0) throw ConfigError("temperature must be nonnegative");
  if (material) material->validate();
}

namespace {

// (section, key) inventory; keep in sync with params_from_ini.
const std::set<std::pair<std::string, std::string>>& config_keys() {
  static const std::set<std::pair<std::string, std::string>> keys = {
      {"system", "frequency_b_hz"},
      {"system", "frequency_1_hz"},
      {"system", "frequency_2_hz"},
      {"system", "frequency_m_hz"},
      {"system", "drive_frequency_hz"},
      {"system", "delta_1"},
      {"system", "delta_2"},
      {"system", "delta_m0"},
      {"system", "delta_m_is_effective"},
      {"system", "delta_k_override"},
      {"system", "kappa_1"},
      {"system", "kappa_2"},
      {"system", "kappa_m"},
      {"system", "gamma_b"},
      {"system", "coupling_gamma_1"},
      {"system", "coupling_gamma_2"},
      {"system", "g_mb_hz"},
      {"system", "kerr_k_hz"},
      {"drive", "rabi_omega_rad"},
      {"drive", "drive_e1_rad"},
      {"drive", "drive_e2_rad"},
      {"bath", "temperature_k"},
      {"material", "verdet_rad_per_tm"},
      {"material", "refractive_index"},
      {"material", "spin_density_per_m3"},
      {"material", "sphere_radius_m"},
      {"material", "mu0_kan_si"},
      {"material", "saturation_m_a_per_m"},
      {"material", "gamma_g_hz_per_t"},
      {"material", "spin_number_density_per_m3"},
      {"material", "drive_field_t"},
      {"material", "laser_power_w"},
      {"material", "laser_frequency_hz"},
      {"material", "crystal_axis"},
  };
  return keys;
}

}  // namespace

bool known_config_key(const std::string& section, const std::string& key) {
  return config_keys().count({section, key}) > 0;
}

SystemParams params_from_ini(const IniDoc& doc) {
  SystemParams p;
  // [system] -- frequencies declared as ordinary frequencies in Hz; the
  // angular 2*pi factor is applied here.
  p.omega_b = cn::two_pi * doc.number("system", "frequency_b_hz");
  p.omega_1 = cn::two_pi * doc.number("system", "frequency_1_hz");
  p.omega_2 = cn::two_pi * doc.number("system", "frequency_2_hz");
  p.omega_m = cn::two_pi * doc.number("system", "frequency_m_hz");
  if (!(p.omega_b > 0)) throw ConfigError("field [system] frequency_b_hz must be positive");

  p.delta_1 = doc.number("system", "delta_1");
  p.delta_2 = doc.number("system", "delta_2");
  p.delta_m0 = doc.number("system", "delta_m0");
  p.delta_m_is_effective = doc.flag_or("system", "delta_m_is_effective", true);
  if (doc.has("system", "delta_k_override"))
    p.delta_K_override = doc.number("system", "delta_k_override");

  // Drive frequency: explicit if given, otherwise reconstructed from the
  // cavity-1 resonance and detuning (informational only).
  if (doc.has("system", "drive_frequency_hz"))
    p.omega_0 = cn::two_pi * doc.number("system", "drive_frequency_hz");
  else
    p.omega_0 = p.omega_1 - p.delta_1 * p.omega_b;

  p.kappa_1 = doc.number("system", "kappa_1");
  p.kappa_2 = doc.number("system", "kappa_2");
  p.kappa_m = doc.number("system", "kappa_m");
  p.gamma_b = doc.number("system", "gamma_b");
  p.coupling_gamma_1 = doc.number("system", "coupling_gamma_1");
  p.coupling_gamma_2 = doc.number("system", "coupling_gamma_2");

  p.g_mb = cn::two_pi * doc.number("system", "g_mb_hz");
  p.kerr_K = cn::two_pi * doc.number_or("system", "kerr_k_hz", 0.0);

  // [drive] -- amplitudes are already angular quantities, rad/s.
  p.rabi_Omega = doc.number("drive", "rabi_omega_rad");
  p.drive_E1 = doc.number("drive", "drive_e1_rad");
  p.drive_E2 = doc.number("drive", "drive_e2_rad");

  // [bath]
  p.temperature = doc.number("bath", "temperature_k");

  // [material] -- optional section; when present, all fields are required.
  if (doc.has_section("material")) {
    MaterialConstants m;
    m.verdet = doc.number("material", "verdet_rad_per_tm");
    m.refractive_index = doc.number("material", "refractive_index");
    m.spin_density = doc.number("material", "spin_density_per_m3");
    m.sphere_radius = doc.number("material", "sphere_radius_m");
    m.mu0_kan = doc.number("material", "mu0_kan_si");
    m.saturation_M = doc.number("material", "saturation_m_a_per_m");
    m.gamma_G = cn::two_pi * doc.number("material", "gamma_g_hz_per_t");
    m.spin_number_density = doc.number("material", "spin_number_density_per_m3");
    m.drive_field = doc.number("material", "drive_field_t");
    m.laser_power = doc.number("material", "laser_power_w");
    m.laser_frequency = cn::two_pi * doc.number("material", "laser_frequency_hz");
    std::string axis = doc.text_or("material", "crystal_axis", "100");
    if (axis == "100")
      m.axis = CrystalAxis::axis_100;
    else if (axis == "110")
      m.axis = CrystalAxis::axis_110;
    else
      throw ConfigError("field [material] crystal_axis must be 100 or 110, got '" + axis + "'");
    p.material = m;
  }

  p.validate();
  p.refresh_occupations();
  return p;
}

SystemParams load_params(const std::string& path) {
  return params_from_ini(IniDoc::parse_file(path));
}

double derive_optomagnonic_coupling(const MaterialConstants& mat) {
  if (!(mat.sphere_radius > 0))
    throw DomainError("derive_optomagnonic_coupling: sphere radius must be positive");
  if (!(mat.spin_density > 0))
    throw DomainError("derive_optomagnonic_coupling: spin density must be positive");
  if (!(mat.refractive_index > 0))
    throw DomainError("derive_optomagnonic_coupling: refractive index must be positive");
  double vm = mat.volume();
  return mat.verdet * (cn::c_light / mat.refractive_index) *
         std::sqrt(2.0 / (mat.spin_density * vm));
}

DerivedDrives derive_kerr_and_drives(const MaterialConstants& mat, double kappa) {
  mat.validate();
  if (!(kappa > 0)) throw DomainError("derive_kerr_and_drives: kappa must be positive");
  double v = mat.volume();
  double n = mat.spin_number();
  DerivedDrives d;
  double magnitude = mat.mu0_kan * mat.gamma_G * mat.gamma_G / (mat.saturation_M *
                                                                mat.saturation_M * v);
  d.kerr_K = (mat.axis == CrystalAxis::axis_100) ? magnitude : -magnitude;
  d.rabi_Omega = 1.25 * mat.gamma_G * std::sqrt(n) * mat.drive_field;
  d.drive_E = std::sqrt(2.0 * kappa * mat.laser_power / (cn::hbar * mat.laser_frequency));
  return d;
}

RawRates to_raw(const SystemParams& p) {
  RawRates r;
  r.omega_b = p.omega_b;
  r.delta_1 = p.delta_1 * p.omega_b;
  r.delta_2 = p.delta_2 * p.omega_b;
  r.delta_m0 = p.delta_m0 * p.omega_b;
  r.kappa_1 = p.kappa_1 * p.omega_b;
  r.kappa_2 = p.kappa_2 * p.omega_b;
  r.kappa_m = p.kappa_m * p.omega_b;
  r.gamma_b = p.gamma_b * p.omega_b;
  r.coupling_gamma_1 = p.coupling_gamma_1 * p.omega_b;
  r.coupling_gamma_2 = p.coupling_gamma_2 * p.omega_b;
  return r;
}

void apply_raw(SystemParams& p, const RawRates& raw) {
  if (!(raw.omega_b > 0)) throw ConfigError("omega_b must be positive");
  p.omega_b = raw.omega_b;
  p.delta_1 = raw.delta_1 / raw.omega_b;
  p.delta_2 = raw.delta_2 / raw.omega_b;
  p.delta_m0 = raw.delta_m0 / raw.omega_b;
  p.kappa_1 = raw.kappa_1 / raw.omega_b;
  p.kappa_2 = raw.kappa_2 / raw.omega_b;
  p.kappa_m = raw.kappa_m / raw.omega_b;
  p.gamma_b = raw.gamma_b / raw.omega_b;
  p.coupling_gamma_1 = raw.coupling_gamma_1 / raw.omega_b;
  p.coupling_gamma_2 = raw.coupling_gamma_2 / raw.omega_b;
}

}  // namespace magnomech
