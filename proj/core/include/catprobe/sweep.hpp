#pragma once

#include <string>
#include <vector>

#include "catprobe/config.hpp"

/// \file sweep.hpp
/// Batch front end: expands figure presets or custom configs into a flat,
/// deterministically ordered list of parameter points, evaluates the full
/// observable pipeline at each point (point-parallel, ordered collection),
/// and writes CSV / JSON-manifest / plot-script artifacts.

namespace catprobe {

/// One fully resolved parameter point of a sweep.
struct SweepPoint {
  RunConfig cfg;        ///< complete scalar parameter set
  double dalpha = 0.0;  ///< resolution step; 0 disables the resolution column
  std::string curve;    ///< grouping label for plotting
};

struct SweepSpec {
  std::string experiment = "custom";
  std::vector<SweepPoint> points;
  std::string config_echo;  ///< resolved config text (custom sweeps)
};

/// Known experiment ids, matching the paper's figure families.
extern const char* const kPresetNames[6];

bool is_preset(const std::string& id);
SweepSpec make_preset(const std::string& id);
SweepSpec make_custom_sweep(const RunConfig& cfg);

struct SweepRow {
  int index = 0;
  SweepPoint point;
  bool ok = false;
  std::string status = "ok";

  double delta_gamma = 0.0;
  double visibility = 0.0;
  double p_excite = 0.0;
  double eta_re = 0.0, eta_im = 0.0;
  double eta_ref_re = 0.0, eta_ref_im = 0.0;
  double entropy = 0.0;
  double a_i = 0.0, a_z = 0.0, a_x = 0.0, a_y = 0.0;
  double resolution = 0.0;
  double trace_residual = 0.0;
  double hermiticity_residual = 0.0;
  int qubit_sum_modes = 0;
  int probe_sum_modes = 0;
  bool flag_p_excite = false;
  bool flag_negative_im = false;
  bool flag_rho_invalid = false;
};

/// Evaluates every point.  Row order equals point order regardless of the
/// thread count; rows never abort the sweep (failures are captured in
/// status).  threads <= 0 selects the hardware default.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 0);

/// Fixed-schema CSV with full-precision floats; byte-stable across runs and
/// thread counts.
std::string csv_header();
std::string csv_line(const SweepRow& row, const std::string& experiment);
void write_csv(const std::vector<SweepRow>& rows, const std::string& experiment,
               const std::string& path);

/// JSON run manifest: spec echo, tolerances, code version, wall time, flag
/// tallies.  A sweep can be reproduced from it byte-identically.
void write_manifest(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                    const std::string& csv_path, double wall_seconds, int threads,
                    const std::string& path);

/// Rebuilds the spec recorded in a manifest.
SweepSpec spec_from_manifest(const std::string& path);

/// Emits a matplotlib script rendering the CSV into the figure's panel
/// layout; purely a generated artifact, never imported back.
void write_plot_script(const std::string& experiment, const std::string& csv_path,
                       const std::string& script_path);

/// True when every row succeeded and carries no protocol-validity flag.
bool all_rows_clean(const std::vector<SweepRow>& rows);

}  // namespace catprobe
