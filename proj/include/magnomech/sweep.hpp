#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "magnomech/params.hpp"
#include "magnomech/pipeline.hpp"

namespace magnomech {

// Which Kerr branches a sweep evaluates; `both` compares all three signs and
// adds the nonreciprocity columns.
enum class KerrMode : int { zero = 0, plus, minus, both };
const char* kerr_mode_name(KerrMode m);
std::optional<KerrMode> kerr_mode_from_name(const std::string& name);
std::vector<KerrBranch> kerr_branches(KerrMode m);

// One swept parameter: uniform grid over [min, max].
struct Axis {
  std::string id;  // delta_1 | delta_2 | delta_m | g_over_gamma
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  double at(int i) const;
  void validate() const;
};

struct SweepSpec {
  Axis axis1;
  std::optional<Axis> axis2;
  KerrMode kerr_mode = KerrMode::zero;
  std::vector<MeasureId> measures;
  // Fixed overrides applied at every grid point (phonon-frequency units).
  std::optional<double> delta_1;
  std::optional<double> delta_2;
  std::optional<double> delta_m;
  std::optional<double> g_over_gamma;
  bool fixed_delta_k = false;  // signed fixed Kerr shift vs self-consistent
  double delta_k_magnitude = 0.1;
  void validate() const;
};

struct SweepRow {
  double axis1_value = 0.0;
  double axis2_value = 0.0;  // unused for 1-axis sweeps
  KerrBranch branch = KerrBranch::zero;
  bool stable = false;
  std::string error;  // per-row solver failure, empty otherwise
  // Indexed by MeasureId; NaN = not requested / unstable sentinel.
  std::array<double, measure_count> values{};
  // kerr_mode=both only, shared by all rows of a grid point: |plus - minus|
  // for the bipartite measures, contrast ratio for the tripartite ones.
  std::array<double, measure_count> delta_e{};
  std::array<double, measure_count> contrast{};
  SweepRow();
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // axis1-major, then axis2, then zero/plus/minus
  std::vector<std::string> warnings;
  int points1 = 0;
  int points2 = 1;  // 1 for 1-axis sweeps
};

// Evaluate the grid; grid points are independent tasks distributed over
// `workers` threads, written to index-addressed slots so the output is
// schedule-independent.
SweepResult run_sweep(const SweepSpec& spec, const SystemParams& params, int workers = 1);

// CSV with stable column names, 17 significant digits, NaN as empty cell.
std::string render_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);

// A figure preset: one or more panels, each its own sweep spec.
struct FigurePanel {
  std::string name;  // file stem, e.g. "fig6a"
  SweepSpec spec;
};
struct FigurePreset {
  std::string name;
  std::vector<FigurePanel> panels;
};

// Known presets: fig2 fig3 fig4 fig5 fig6a-d fig6e-h fig7. Unknown names
// throw UsageError.
FigurePreset figure_preset(const std::string& name);
std::vector<std::string> figure_preset_names();

// Run every panel and write CSV data, a gnuplot script and metadata JSON
// into out_dir; returns the paths written. Two-axis panels are split into
// one CSV per Kerr branch.
std::vector<std::string> emit_figure(const FigurePreset& preset, const SystemParams& params,
                                     const std::string& out_dir, int workers = 1);

}  // namespace magnomech
