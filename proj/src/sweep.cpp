#include "magnomech/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "magnomech/errors.hpp"
#include "magnomech/nonrecip.hpp"
#include "magnomech/version.hpp"

namespace magnomech {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell(double v) { return std::isfinite(v) ? fmt17(v) : std::string(); }

const std::array<const char*, 4> axis_ids = {"delta_1", "delta_2", "delta_m",
                                             "g_over_gamma"};

void apply_axis(PointSpec& ps, const std::string& id, double v) {
  if (id == "delta_1")
    ps.delta_1 = v;
  else if (id == "delta_2")
    ps.delta_2 = v;
  else if (id == "delta_m")
    ps.delta_m = v;
  else if (id == "g_over_gamma")
    ps.g_over_gamma = v;
  else
    throw DomainError("unknown sweep axis '" + id + "'");
}

std::string iso8601_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json axis_json(const Axis& a) {
  return {{"id", a.id}, {"min", a.min}, {"max", a.max}, {"points", a.points}};
}

nlohmann::json spec_json(const SweepSpec& s) {
  nlohmann::json j;
  j["axis1"] = axis_json(s.axis1);
  if (s.axis2) j["axis2"] = axis_json(*s.axis2);
  j["kerr_mode"] = kerr_mode_name(s.kerr_mode);
  j["measures"] = nlohmann::json::array();
  for (MeasureId id : s.measures) j["measures"].push_back(measure_name(id));
  j["delta_k"] = {{"mode", s.fixed_delta_k ? "fixed" : "self-consistent"},
                  {"magnitude", s.delta_k_magnitude}};
  nlohmann::json fixed = nlohmann::json::object();
  if (s.delta_1) fixed["delta_1"] = *s.delta_1;
  if (s.delta_2) fixed["delta_2"] = *s.delta_2;
  if (s.delta_m) fixed["delta_m"] = *s.delta_m;
  if (s.g_over_gamma) fixed["g_over_gamma"] = *s.g_over_gamma;
  j["fixed_overrides"] = fixed;
  return j;
}

SweepSpec grid_2d(std::vector<MeasureId> measures) {
  SweepSpec s;
  s.axis1 = {"delta_1", -2.0, 2.0, 101};
  s.axis2 = Axis{"delta_2", -2.0, 2.0, 101};
  s.kerr_mode = KerrMode::both;
  s.measures = std::move(measures);
  s.delta_m = 1.0;
  s.fixed_delta_k = false;  // self-consistent Kerr shift at every point
  return s;
}

SweepSpec line_g(std::vector<MeasureId> measures, double d1, double d2,
                 bool fixed_dk) {
  SweepSpec s;
  s.axis1 = {"g_over_gamma", 0.0, 2.0, 201};
  s.kerr_mode = KerrMode::both;
  s.measures = std::move(measures);
  s.delta_1 = d1;
  s.delta_2 = d2;
  s.delta_m = 1.0;
  s.fixed_delta_k = fixed_dk;
  s.delta_k_magnitude = 0.1;
  return s;
}

}  // namespace

const char* kerr_mode_name(KerrMode m) {
  switch (m) {
    case KerrMode::zero: return "zero";
    case KerrMode::plus: return "plus";
    case KerrMode::minus: return "minus";
    case KerrMode::both: return "both";
  }
  return "?";
}

std::optional<KerrMode> kerr_mode_from_name(const std::string& name) {
  for (KerrMode m : {KerrMode::zero, KerrMode::plus, KerrMode::minus, KerrMode::both})
    if (name == kerr_mode_name(m)) return m;
  return std::nullopt;
}

std::vector<KerrBranch> kerr_branches(KerrMode m) {
  switch (m) {
    case KerrMode::zero: return {KerrBranch::zero};
    case KerrMode::plus: return {KerrBranch::plus};
    case KerrMode::minus: return {KerrBranch::minus};
    case KerrMode::both: return {KerrBranch::zero, KerrBranch::plus, KerrBranch::minus};
  }
  return {};
}

double Axis::at(int i) const {
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(points - 1);
}

void Axis::validate() const {
  if (std::find(axis_ids.begin(), axis_ids.end(), id) == axis_ids.end())
    throw DomainError("unknown sweep axis '" + id + "'");
  if (points < 2) throw DomainError("sweep axis '" + id + "': need at least 2 points");
  if (!(min < max)) throw DomainError("sweep axis '" + id + "': min must be below max");
  if (!std::isfinite(min) || !std::isfinite(max))
    throw DomainError("sweep axis '" + id + "': bounds must be finite");
}

void SweepSpec::validate() const {
  axis1.validate();
  if (axis2) {
    axis2->validate();
    if (axis2->id == axis1.id) throw DomainError("sweep axes must differ");
  }
}

SweepRow::SweepRow() {
  values.fill(nan_v);
  delta_e.fill(nan_v);
  contrast.fill(nan_v);
}

SweepResult run_sweep(const SweepSpec& spec, const SystemParams& params, int workers) {
  spec.validate();
  params.validate();
  const int n1 = spec.axis1.points;
  const int n2 = spec.axis2 ? spec.axis2->points : 1;
  const auto branches = kerr_branches(spec.kerr_mode);
  const int nb = static_cast<int>(branches.size());
  const bool both = spec.kerr_mode == KerrMode::both;

  SweepResult result;
  result.spec = spec;
  result.points1 = n1;
  result.points2 = n2;
  result.rows.resize(static_cast<size_t>(n1) * n2 * nb);

  auto eval_grid_point = [&](int pt) {
    const int i1 = pt / n2, i2 = pt % n2;
    const double v1 = spec.axis1.at(i1);
    const double v2 = spec.axis2 ? spec.axis2->at(i2) : 0.0;
    const size_t base = static_cast<size_t>(pt) * nb;
    for (int k = 0; k < nb; ++k) {
      SweepRow& row = result.rows[base + k];
      row.axis1_value = v1;
      row.axis2_value = v2;
      row.branch = branches[k];
      PointSpec ps;
      ps.branch = branches[k];
      ps.fixed_delta_k = spec.fixed_delta_k;
      ps.delta_k_magnitude = spec.delta_k_magnitude;
      ps.delta_1 = spec.delta_1;
      ps.delta_2 = spec.delta_2;
      ps.delta_m = spec.delta_m;
      ps.g_over_gamma = spec.g_over_gamma;
      apply_axis(ps, spec.axis1.id, v1);
      if (spec.axis2) apply_axis(ps, spec.axis2->id, v2);
      try {
        PointResult pr = evaluate_point(params, ps, spec.measures);
        row.stable = pr.stable;
        row.values = pr.values;
      } catch (const std::exception& e) {
        row.stable = false;
        row.error = e.what();
      }
    }
    if (both) {
      // Branch order within a grid point is zero, plus, minus.
      std::array<double, measure_count> de, bc;
      de.fill(nan_v);
      bc.fill(nan_v);
      for (MeasureId id : spec.measures) {
        const int i = static_cast<int>(id);
        NonreciprocityPair pair;
        pair.measure_id = measure_name(id);
        pair.value_plus = result.rows[base + 1].values[i];
        pair.value_minus = result.rows[base + 2].values[i];
        if (measure_is_tripartite(id))
          bc[i] = bidirectional_contrast_ratio(pair);
        else
          de[i] = bipartite_nonlinear_index(pair);
      }
      for (int k = 0; k < nb; ++k) {
        result.rows[base + k].delta_e = de;
        result.rows[base + k].contrast = bc;
      }
    }
  };

  const int total = n1 * n2;
  const int nw = std::max(1, std::min(workers, total));
  if (nw == 1) {
    for (int pt = 0; pt < total; ++pt) eval_grid_point(pt);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w)
      pool.emplace_back([&] {
        for (int pt = next.fetch_add(1); pt < total; pt = next.fetch_add(1))
          eval_grid_point(pt);
      });
    for (auto& t : pool) t.join();
  }

  bool any_stable = false;
  for (const auto& r : result.rows) any_stable = any_stable || r.stable;
  if (!result.rows.empty() && !any_stable)
    result.warnings.push_back("all grid points unstable");
  return result;
}

std::string render_csv(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  const bool two = spec.axis2.has_value();
  const bool both = spec.kerr_mode == KerrMode::both;
  std::string out;
  out += spec.axis1.id;
  if (two) {
    out += ',';
    out += spec.axis2->id;
  }
  out += ",kerr,stable";
  for (MeasureId id : spec.measures) {
    out += ',';
    out += measure_name(id);
  }
  if (both)
    for (MeasureId id : spec.measures) {
      out += ',';
      out += measure_is_tripartite(id) ? "bcr_" : "dE_";
      out += measure_name(id);
    }
  out += '\n';
  for (const SweepRow& row : result.rows) {
    out += fmt17(row.axis1_value);
    if (two) {
      out += ',';
      out += fmt17(row.axis2_value);
    }
    out += ',';
    out += kerr_branch_name(row.branch);
    out += ',';
    out += row.stable ? '1' : '0';
    for (MeasureId id : spec.measures) {
      out += ',';
      out += cell(row.values[static_cast<int>(id)]);
    }
    if (both)
      for (MeasureId id : spec.measures) {
        out += ',';
        const int i = static_cast<int>(id);
        out += cell(measure_is_tripartite(id) ? row.contrast[i] : row.delta_e[i]);
      }
    out += '\n';
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("emit_csv: cannot open '" + path + "' for writing");
  f << render_csv(result);
  if (!f) throw Error("emit_csv: write failure on '" + path + "'");
}

std::vector<std::string> figure_preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6a-d", "fig6e-h", "fig7"};
}

FigurePreset figure_preset(const std::string& name) {
  FigurePreset p;
  p.name = name;
  if (name == "fig2") {
    p.panels.push_back({"fig2", grid_2d({MeasureId::E_c1c2})});
  } else if (name == "fig3") {
    p.panels.push_back({"fig3", grid_2d({MeasureId::E_c1m})});
  } else if (name == "fig4") {
    p.panels.push_back({"fig4", grid_2d({MeasureId::E_c1b})});
  } else if (name == "fig5") {
    p.panels.push_back({"fig5", grid_2d({MeasureId::E_mb})});
  } else if (name == "fig6a-d") {
    // Each panel sweeps the drive strength at its bipartition's detuning
    // optimum, with fixed Kerr-shift magnitude 0.1.
    p.panels.push_back({"fig6a", line_g({MeasureId::E_c1c2}, 0.96, -0.88, true)});
    p.panels.push_back({"fig6b", line_g({MeasureId::E_c1m}, -0.88, -0.08, true)});
    p.panels.push_back({"fig6c", line_g({MeasureId::E_c1b}, -0.76, -0.04, true)});
    p.panels.push_back({"fig6d", line_g({MeasureId::E_mb}, 0.04, 0.04, true)});
  } else if (name == "fig6e-h") {
    // All four bipartitions at (-1, +1), Kerr shift taken self-consistently
    // from the solved mean field of each branch.
    p.panels.push_back({"fig6e-h",
                        line_g({MeasureId::E_c1c2, MeasureId::E_c1m, MeasureId::E_c1b,
                                MeasureId::E_mb},
                               -1.0, 1.0, false)});
  } else if (name == "fig7") {
    SweepSpec s;
    s.axis1 = {"delta_1", -2.0, 2.0, 201};
    s.kerr_mode = KerrMode::both;
    s.measures = {MeasureId::R_c1mb, MeasureId::R_c1mc2};
    s.delta_2 = 1.0;
    s.delta_m = 1.0;
    s.g_over_gamma = 1.1;
    s.fixed_delta_k = true;
    s.delta_k_magnitude = 0.1;
    p.panels.push_back({"fig7", s});
  } else {
    std::string known;
    for (const auto& n : figure_preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown figure preset '" + name + "' (known: " + known + ")");
  }
  return p;
}

namespace {

std::string gp_script(const FigurePanel& panel) {
  const SweepSpec& s = panel.spec;
  std::ostringstream gp;
  gp << "# gnuplot companion for " << panel.name << "\n";
  gp << "set datafile separator ','\n";
  if (s.axis2) {
    gp << "set xlabel '" << s.axis1.id << "'\nset ylabel '" << s.axis2->id << "'\n";
    gp << "set dgrid3d " << s.axis2->points << "," << s.axis1.points << "\n";
    gp << "set pm3d map\n";
    int col = 5;  // axis1, axis2, kerr, stable, first measure
    for (KerrBranch b : kerr_branches(s.kerr_mode)) {
      gp << "# " << kerr_branch_name(b) << " branch\n";
      gp << "splot '" << panel.name << "_" << kerr_branch_name(b) << ".csv' every ::1 using 1:2:"
         << col << " title '" << (s.measures.empty() ? "" : measure_name(s.measures[0]))
         << " (" << kerr_branch_name(b) << ")'\npause -1\n";
    }
  } else {
    gp << "set xlabel '" << s.axis1.id << "'\nset key outside\nplot ";
    bool first = true;
    int col = 4;  // axis1, kerr, stable, measures...
    for (MeasureId id : s.measures) {
      for (KerrBranch b : kerr_branches(s.kerr_mode)) {
        if (!first) gp << ", \\\n     ";
        gp << "'" << panel.name << ".csv' every ::1 using 1:(strcol(2) eq '"
           << kerr_branch_name(b) << "' ? $" << col << " : NaN) with lines title '"
           << measure_name(id) << " " << kerr_branch_name(b) << "'";
        first = false;
      }
      ++col;
    }
    if (s.kerr_mode == KerrMode::both) {
      for (MeasureId id : s.measures) {
        if (!first) gp << ", \\\n     ";
        gp << "'" << panel.name << ".csv' every ::1 using 1:(strcol(2) eq 'zero' ? $" << col
           << " : NaN) with lines title '" << (measure_is_tripartite(id) ? "bcr " : "dE ")
           << measure_name(id) << "'";
        first = false;
        ++col;
      }
    }
    gp << "\npause -1\n";
  }
  return gp.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("write failure on '" + path + "'");
}

}  // namespace

std::vector<std::string> emit_figure(const FigurePreset& preset, const SystemParams& params,
                                     const std::string& out_dir, int workers) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory '" + out_dir + "': " + ec.message());

  std::vector<std::string> paths;
  nlohmann::json meta;
  meta["figure"] = preset.name;
  meta["version"] = project_version;
  meta["generated_utc"] = iso8601_now();
  meta["panels"] = nlohmann::json::array();

  for (const FigurePanel& panel : preset.panels) {
    SweepResult result = run_sweep(panel.spec, params, workers);
    nlohmann::json pj = spec_json(panel.spec);
    pj["panel"] = panel.name;
    pj["rows"] = result.rows.size();
    int unstable = 0;
    for (const auto& r : result.rows) unstable += r.stable ? 0 : 1;
    pj["unstable_rows"] = unstable;
    pj["warnings"] = result.warnings;

    if (panel.spec.axis2) {
      // One file per Kerr branch keeps each contour dataset self-contained.
      for (KerrBranch b : kerr_branches(panel.spec.kerr_mode)) {
        SweepResult sub;
        sub.spec = result.spec;
        sub.points1 = result.points1;
        sub.points2 = result.points2;
        for (const auto& r : result.rows)
          if (r.branch == b) sub.rows.push_back(r);
        std::string path =
            (fs::path(out_dir) / (panel.name + "_" + kerr_branch_name(b) + ".csv")).string();
        emit_csv(sub, path);
        paths.push_back(path);
      }
    } else {
      std::string path = (fs::path(out_dir) / (panel.name + ".csv")).string();
      emit_csv(result, path);
      paths.push_back(path);
    }
    std::string gp_path = (fs::path(out_dir) / (panel.name + ".gp")).string();
    write_text(gp_path, gp_script(panel));
    paths.push_back(gp_path);
    meta["panels"].push_back(pj);
  }

  std::string meta_path =
      (fs::path(out_dir) / (preset.name + "_metadata.json")).string();
  write_text(meta_path, meta.dump(2) + "\n");
  paths.push_back(meta_path);
  return paths;
}

}  // namespace magnomech
