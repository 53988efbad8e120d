// Command-line front end: thin orchestration over the library's public API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magnomech/drift.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/lyapunov.hpp"
#include "magnomech/params.hpp"
#include "magnomech/pipeline.hpp"
#include "magnomech/steady.hpp"
#include "magnomech/sweep.hpp"
#include "magnomech/version.hpp"

namespace {

using namespace magnomech;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

SystemParams load_with_overrides(const std::string& config,
                                 const std::vector<std::string>& sets) {
  IniDoc doc = IniDoc::parse_file(config);
  for (const std::string& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw UsageError("--set expects section.key=value, got '" + s + "'");
    std::string key = s.substr(0, eq), value = s.substr(eq + 1);
    auto dot = key.find('.');
    if (dot == std::string::npos)
      throw UsageError("--set key must be section.key, got '" + key + "'");
    std::string section = key.substr(0, dot), name = key.substr(dot + 1);
    if (!known_config_key(section, name))
      throw UsageError("unknown config key '" + section + "." + name + "'");
    doc.set(section, name, value);
  }
  return params_from_ini(doc);
}

// Shared per-point override flags (point / stability subcommands).
struct PointFlags {
  std::string branch = "zero";
  std::optional<double> fixed_dk;
  std::optional<double> g_over_gamma;
  std::optional<double> delta_1, delta_2, delta_m;
};

void add_point_flags(CLI::App* cmd, PointFlags& f) {
  cmd->add_option("--branch", f.branch, "Kerr branch: zero, plus or minus")
      ->check(CLI::IsMember({"zero", "plus", "minus"}));
  cmd->add_option("--fixed-delta-k", f.fixed_dk,
                  "use a fixed Kerr-shift magnitude (phonon-frequency units) "
                  "instead of the self-consistent value");
  cmd->add_option("--g-over-gamma", f.g_over_gamma,
                  "override the effective coupling as a multiple of the "
                  "cavity-1 coupling");
  cmd->add_option("--delta-1", f.delta_1, "cavity-1 detuning override");
  cmd->add_option("--delta-2", f.delta_2, "cavity-2 detuning override");
  cmd->add_option("--delta-m", f.delta_m, "magnon detuning override");
}

PointSpec to_point_spec(const PointFlags& f) {
  PointSpec ps;
  if (f.branch == "plus")
    ps.branch = KerrBranch::plus;
  else if (f.branch == "minus")
    ps.branch = KerrBranch::minus;
  else
    ps.branch = KerrBranch::zero;
  if (f.fixed_dk) {
    ps.fixed_delta_k = true;
    ps.delta_k_magnitude = *f.fixed_dk;
  }
  ps.g_over_gamma = f.g_over_gamma;
  ps.delta_1 = f.delta_1;
  ps.delta_2 = f.delta_2;
  ps.delta_m = f.delta_m;
  return ps;
}

void write_matrix_csv(std::ostream& os, const Eigen::Matrix<double, 8, 8>& M) {
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) os << (j ? "," : "") << fmt(M(i, j));
    os << "\n";
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  return f;
}

int g_exit = 0;

void cmd_point(const std::string& config, const std::vector<std::string>& sets,
               const PointFlags& flags, const std::string& csv_path,
               const std::string& dump_cm_path) {
  SystemParams params = load_with_overrides(config, sets);
  PointSpec ps = to_point_spec(flags);
  std::vector<MeasureId> ms(all_measures.begin(), all_measures.end());
  PointResult res = evaluate_point(params, ps, ms);

  std::cout << "point: delta_1 = " << fmt6(ps.delta_1.value_or(params.delta_1))
            << ", delta_2 = " << fmt6(ps.delta_2.value_or(params.delta_2))
            << ", delta_m = " << fmt6(res.delta_m) << ", branch = " << flags.branch
            << "\n";
  std::cout << "steady state: |m_s|^2 = "
            << (std::isfinite(res.magnon_number) ? fmt6(res.magnon_number)
                                                 : std::string("(skipped)"))
            << ", Delta_K/omega_b = " << fmt6(res.delta_k)
            << ", G/Gamma = " << fmt6(res.g_over_gamma) << "\n";
  if (!res.stable) {
    std::cout << "stability: UNSTABLE (max Re eig = " << fmt6(res.max_eig_real)
              << ") -- no steady state for the fluctuations\n";
    g_exit = 1;
    return;
  }
  std::cout << "stability: stable (max Re eig = " << fmt6(res.max_eig_real) << ")\n";
  std::cout << "E_N^{c1-c2}          = " << fmt(res.values[0]) << "\n";
  std::cout << "E_N^{c1-m}           = " << fmt(res.values[1]) << "\n";
  std::cout << "E_N^{c1-b}           = " << fmt(res.values[2]) << "\n";
  std::cout << "E_N^{m-b}            = " << fmt(res.values[3]) << "\n";
  std::cout << "R^{tau-min}_{c1-m-b}  = " << fmt(res.values[4]) << "\n";
  std::cout << "R^{tau-min}_{c1-m-c2} = " << fmt(res.values[5]) << "\n";

  if (!csv_path.empty()) {
    auto f = open_out(csv_path);
    f << "delta_1,delta_2,delta_m,kerr,stable";
    for (MeasureId id : all_measures) f << "," << measure_name(id);
    f << "\n";
    f << fmt(ps.delta_1.value_or(params.delta_1)) << ","
      << fmt(ps.delta_2.value_or(params.delta_2)) << "," << fmt(res.delta_m) << ","
      << flags.branch << ",1";
    for (MeasureId id : all_measures) f << "," << fmt(res.values[static_cast<int>(id)]);
    f << "\n";
  }
  if (!dump_cm_path.empty()) {
    auto f = open_out(dump_cm_path);
    write_matrix_csv(f, res.V);
  }
}

void cmd_stability(const std::string& config, const std::vector<std::string>& sets,
                   const PointFlags& flags) {
  SystemParams params = load_with_overrides(config, sets);
  PointResult res = evaluate_point(params, to_point_spec(flags), {});
  std::cout << "drift inputs: G/Gamma = " << fmt6(res.g_over_gamma)
            << ", Delta_K/omega_b = " << fmt6(res.delta_k)
            << ", delta_m = " << fmt6(res.delta_m) << "\n";
  std::cout << "max Re eig(M) = " << fmt(res.max_eig_real) << "\n";
  std::cout << "verdict: " << (res.stable ? "stable" : "NOT stable") << "\n";
}

void cmd_feasibility(const std::string& config, const std::vector<std::string>& sets,
                     double excitation_threshold, double kerr_threshold) {
  SystemParams params = load_with_overrides(config, sets);
  SteadyState ss = solve_steady_state(params);
  FeasibilityThresholds th;
  th.excitation = excitation_threshold;
  th.kerr = kerr_threshold;
  FeasibilityReport rep = check_feasibility(ss, params, th);
  std::cout << "|m_s|^2             = " << fmt6(rep.magnon_number) << "\n";
  std::cout << "5N spin bound       = " << fmt6(rep.spin_bound) << "\n";
  std::cout << "excitation ratio    = " << fmt6(rep.excitation_ratio) << "  ("
            << (rep.low_excitation_ok ? "low-excitation ok" : "NOT low-excitation")
            << ")\n";
  std::cout << "K|m_s|^3 [rad/s]    = " << fmt6(rep.kerr_drive_term) << "\n";
  std::cout << "Omega   [rad/s]     = " << fmt6(params.rabi_Omega) << "\n";
  std::cout << "Kerr/drive ratio    = " << fmt6(rep.kerr_drive_ratio) << "  ("
            << (rep.kerr_negligible ? "Kerr negligible" : "Kerr NOT negligible")
            << ")\n";
}

void cmd_dump(const std::string& config, const std::vector<std::string>& sets,
              const std::string& what, const std::string& out_path) {
  SystemParams params = load_with_overrides(config, sets);
  SteadyState ss = solve_steady_state(params);
  DriftModel model = build_drift_matrix(params, ss);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file = open_out(out_path);
    os = &file;
  }
  if (what == "drift" || what == "all") {
    *os << "# drift\n";
    write_matrix_csv(*os, model.M);
  }
  if (what == "diffusion" || what == "all") {
    *os << "# diffusion\n";
    write_matrix_csv(*os, model.D);
  }
  if (what == "cm" || what == "all") {
    CovarianceMatrix cm = solve_lyapunov(model.M, model.D);
    *os << "# covariance\n";
    write_matrix_csv(*os, cm.V);
  }
}

Axis parse_axis(const std::string& text) {
  // id:min:max:points
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4)
    throw UsageError("axis must be id:min:max:points, got '" + text + "'");
  Axis a;
  a.id = parts[0];
  try {
    a.min = std::stod(parts[1]);
    a.max = std::stod(parts[2]);
    a.points = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw UsageError("axis must be id:min:max:points, got '" + text + "'");
  }
  try {
    a.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return a;
}

std::vector<MeasureId> parse_measures(const std::string& text) {
  std::vector<MeasureId> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    auto id = measure_from_name(cur);
    if (!id) throw UsageError("unknown measure '" + cur + "'");
    out.push_back(*id);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

void cmd_sweep(const std::string& config, const std::vector<std::string>& sets,
               const std::string& axis1, const std::string& axis2,
               const std::string& kerr, const std::string& measures,
               const PointFlags& flags, const std::string& out_path, int workers) {
  SystemParams params = load_with_overrides(config, sets);
  SweepSpec spec;
  spec.axis1 = parse_axis(axis1);
  if (!axis2.empty()) spec.axis2 = parse_axis(axis2);
  auto mode = kerr_mode_from_name(kerr);
  if (!mode) throw UsageError("unknown kerr mode '" + kerr + "'");
  spec.kerr_mode = *mode;
  spec.measures = parse_measures(measures);
  if (flags.fixed_dk) {
    spec.fixed_delta_k = true;
    spec.delta_k_magnitude = *flags.fixed_dk;
  }
  spec.delta_1 = flags.delta_1;
  spec.delta_2 = flags.delta_2;
  spec.delta_m = flags.delta_m;
  spec.g_over_gamma = flags.g_over_gamma;

  SweepResult result = run_sweep(spec, params, workers);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  if (out_path.empty())
    std::cout << render_csv(result);
  else
    emit_csv(result, out_path);
}

void cmd_figure(const std::string& config, const std::vector<std::string>& sets,
                const std::string& preset_name, const std::string& out_dir,
                int workers) {
  SystemParams params = load_with_overrides(config, sets);
  FigurePreset preset = figure_preset(preset_name);
  auto paths = emit_figure(preset, params, out_dir, workers);
  for (const auto& p : paths) std::cout << p << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "steady-state entanglement and Kerr-induced nonreciprocity in a "
      "two-cavity magnomechanical system"};
  app.set_version_flag("--version", magnomech::project_version);
  app.require_subcommand(1);

  struct Common {
    std::string config;
    std::vector<std::string> sets;
  };

  auto add_common = [](CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "parameter file (INI)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", c.sets,
                    "override a config value, section.key=value (repeatable)");
  };

  // point
  auto* point = app.add_subcommand("point", "evaluate one parameter point");
  Common point_c;
  PointFlags point_f;
  std::string point_csv, point_dump_cm;
  add_common(point, point_c);
  add_point_flags(point, point_f);
  point->add_option("--csv", point_csv, "also write the report as a one-row CSV");
  point->add_option("--dump-cm", point_dump_cm, "write the covariance matrix as CSV");
  point->callback(
      [&] { cmd_point(point_c.config, point_c.sets, point_f, point_csv, point_dump_cm); });

  // stability
  auto* stab = app.add_subcommand("stability", "drift-matrix stability report");
  Common stab_c;
  PointFlags stab_f;
  add_common(stab, stab_c);
  add_point_flags(stab, stab_f);
  stab->callback([&] { cmd_stability(stab_c.config, stab_c.sets, stab_f); });

  // feasibility
  auto* feas = app.add_subcommand("feasibility", "drive/Kerr/excitation feasibility check");
  Common feas_c;
  double feas_exc = 1e-2, feas_kerr = 0.1;
  add_common(feas, feas_c);
  feas->add_option("--excitation-threshold", feas_exc,
                   "low-excitation bound on |m_s|^2/(5N)");
  feas->add_option("--kerr-threshold", feas_kerr, "bound on K|m_s|^3/Omega");
  feas->callback([&] { cmd_feasibility(feas_c.config, feas_c.sets, feas_exc, feas_kerr); });

  // dump
  auto* dump = app.add_subcommand("dump", "dump drift/diffusion/covariance matrices");
  Common dump_c;
  std::string dump_what = "all", dump_out;
  add_common(dump, dump_c);
  dump->add_option("--what", dump_what, "drift, diffusion, cm or all")
      ->check(CLI::IsMember({"drift", "diffusion", "cm", "all"}));
  dump->add_option("--output", dump_out, "output file (default stdout)");
  dump->callback([&] { cmd_dump(dump_c.config, dump_c.sets, dump_what, dump_out); });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid to CSV");
  Common sweep_c;
  PointFlags sweep_f;
  std::string sweep_axis1, sweep_axis2, sweep_kerr = "zero", sweep_measures, sweep_out;
  int sweep_workers = 1;
  add_common(sweep, sweep_c);
  sweep->add_option("--axis1", sweep_axis1, "swept axis, id:min:max:points")->required();
  sweep->add_option("--axis2", sweep_axis2, "second axis, id:min:max:points");
  sweep->add_option("--kerr", sweep_kerr, "zero, plus, minus or both");
  sweep->add_option("--measures", sweep_measures,
                    "comma-separated measures (E_c1c2,E_c1m,E_c1b,E_mb,R_c1mb,R_c1mc2)");
  sweep->add_option("--output,-o", sweep_out, "output CSV (default stdout)");
  sweep->add_option("--workers", sweep_workers, "worker threads")
      ->check(CLI::PositiveNumber);
  add_point_flags(sweep, sweep_f);
  sweep->callback([&] {
    cmd_sweep(sweep_c.config, sweep_c.sets, sweep_axis1, sweep_axis2, sweep_kerr,
              sweep_measures, sweep_f, sweep_out, sweep_workers);
  });

  // figure
  auto* figure = app.add_subcommand("figure", "run a named figure preset");
  Common figure_c;
  std::string figure_preset_name, figure_out_dir = "figures";
  int figure_workers = 1;
  add_common(figure, figure_c);
  figure->add_option("--preset", figure_preset_name, "preset name (fig2 ... fig7)")
      ->required();
  figure->add_option("--out-dir", figure_out_dir, "output directory");
  figure->add_option("--workers", figure_workers, "worker threads")
      ->check(CLI::PositiveNumber);
  figure->callback([&] {
    cmd_figure(figure_c.config, figure_c.sets, figure_preset_name, figure_out_dir,
               figure_workers);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const magnomech::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const magnomech::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
