#include "catprobe/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "catprobe/qubit_state.hpp"

namespace catprobe {

namespace {

using nlohmann::json;

constexpr const char* kCodeVersion = "0.1.0";

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return v;
}

std::string curve_label(const std::string& a, double va, const std::string& b, double vb) {
  std::ostringstream s;
  s << a << "=" << va << ";" << b << "=" << vb;
  return s.str();
}

RunConfig preset_base() {
  RunConfig cfg;
  cfg.L = 1.0;
  cfg.c = 1.0;
  cfg.v = 0.1;
  cfg.kappa = 2;
  cfg.mode_cutoff = 0;
  cfg.x0_over_L = 0.25;
  cfg.delta_over_omega = -0.2;
  cfg.theta = 0.5 * pi;
  cfg.phi = -0.5 * pi;
  cfg.A = 1.0 / std::sqrt(2.0);
  cfg.B = -1.0;
  return cfg;
}

}  // namespace

const char* const kPresetNames[6] = {"fig2-phase-vs-alpha",   "fig3-phase-vs-position",
                                     "fig4-bloch-vs-phase",   "fig5to7-entropy-vs-phase",
                                     "fig-resolution",        "fig-visibility"};

bool is_preset(const std::string& id) {
  for (const char* name : kPresetNames)
    if (id == name) return true;
  return false;
}

SweepSpec make_preset(const std::string& id) {
  SweepSpec spec;
  spec.experiment = id;

  if (id == "fig2-phase-vs-alpha") {
    // Maximally entangled state, phase vs |alpha| for several |beta| and
    // coupling ratios; strong coupling so the phase saturates on the grid.
    for (double r : {5.0, 1.0, 1e-2})
      for (double beta : {1.0, 10.0, 15.0, 300.0})
        for (double alpha : linspace(0.0, 400.0, 101)) {
          SweepPoint p;
          p.cfg = preset_base();
          p.cfg.lambda_p_T = 1.5;
          p.cfg.lambda_q_over_lambda_p = r;
          p.cfg.beta_abs = beta;
          p.cfg.alpha_abs = alpha;
          p.curve = curve_label("r", r, "beta", beta);
          spec.points.push_back(p);
        }
  } else if (id == "fig3-phase-vs-position") {
    const double pairs[4][2] = {
        {0.5, 0.8660254037844386}, {0.7071067811865476, 0.7071067811865476}, {1.0, 0.0}, {0.0, 1.0}};
    for (double m : {10.0, 1.0, 0.3})
      for (const auto& ab : pairs)
        for (double x0 : linspace(0.0, 1.0, 101)) {
          SweepPoint p;
          p.cfg = preset_base();
          p.cfg.lambda_p_T = 1e-2;
          p.cfg.lambda_q_over_lambda_p = 3.0;
          p.cfg.alpha_abs = m;
          p.cfg.beta_abs = m;
          p.cfg.A = ab[0];
          p.cfg.B = ab[1];
          p.cfg.x0_over_L = x0;
          p.curve = curve_label("m", m, "A", ab[0]);
          spec.points.push_back(p);
        }
  } else if (id == "fig4-bloch-vs-phase") {
    for (double m : {10.0, 1.0, 0.1})
      for (double a : linspace(0.0, 1.0, 101)) {
        SweepPoint p;
        p.cfg = preset_base();
        p.cfg.lambda_p_T = 1e-2;
        p.cfg.lambda_q_over_lambda_p = 1.0;
        p.cfg.alpha_abs = m;
        p.cfg.beta_abs = m;
        p.cfg.A = a;
        p.cfg.B = -1.0;
        p.curve = curve_label("m", m, "panel", m);
        spec.points.push_back(p);
      }
  } else if (id == "fig5to7-entropy-vs-phase") {
    for (double r : {1e-2, 5.0, 1.0})
      for (double alpha : {30.0, 10.0, 1.0})
        for (double beta : {1.0, 10.0, 15.0, 30.0})
          for (double a : linspace(0.0, 1.0, 101)) {
            SweepPoint p;
            p.cfg = preset_base();
            p.cfg.lambda_p_T = 1e-2;
            p.cfg.lambda_q_over_lambda_p = r;
            p.cfg.alpha_abs = alpha;
            p.cfg.beta_abs = beta;
            p.cfg.A = a;
            p.cfg.B = -1.0;
            p.curve = curve_label("r", r, "alpha", alpha) + ";beta=" + fmt(beta);
            spec.points.push_back(p);
          }
  } else if (id == "fig-resolution") {
    for (double r : {5.0, 1.0, 1e-2})
      for (double dalpha : {1.0, 2.0, 3.0, 4.0})
        for (double alpha : linspace(0.0, 40.0, 81)) {
          SweepPoint p;
          p.cfg = preset_base();
          p.cfg.lambda_p_T = 1.5;
          p.cfg.lambda_q_over_lambda_p = r;
          p.cfg.alpha_abs = alpha;
          p.cfg.beta_abs = 20.0;
          p.dalpha = dalpha;
          p.curve = curve_label("r", r, "dalpha", dalpha);
          spec.points.push_back(p);
        }
  } else if (id == "fig-visibility") {
    for (double r : {5.0, 1.0, 1e-2})
      for (double beta : {1.0, 10.0, 15.0, 300.0})
        for (double alpha : linspace(0.0, 150.0, 151)) {
          SweepPoint p;
          p.cfg = preset_base();
          p.cfg.lambda_p_T = 1e-2;
          p.cfg.lambda_q_over_lambda_p = r;
          p.cfg.alpha_abs = alpha;
          p.cfg.beta_abs = beta;
          p.curve = curve_label("r", r, "beta", beta);
          spec.points.push_back(p);
        }
  } else {
    throw config_error("unknown preset '" + id + "'");
  }
  return spec;
}

SweepSpec make_custom_sweep(const RunConfig& cfg) {
  if (cfg.sweep_param.empty())
    throw config_error("custom sweep requires sweep_param/sweep_min/sweep_max/sweep_points");
  if (cfg.sweep_points < 1) throw config_error("sweep_points must be >= 1");
  if (!(cfg.sweep_max >= cfg.sweep_min)) throw config_error("sweep grid must be monotone");

  SweepSpec spec;
  spec.experiment = "custom";
  spec.config_echo = config_to_text(cfg);
  for (double x : linspace(cfg.sweep_min, cfg.sweep_max, cfg.sweep_points)) {
    SweepPoint p;
    p.cfg = cfg;
    if (cfg.sweep_param == "alpha_abs") p.cfg.alpha_abs = x;
    else if (cfg.sweep_param == "beta_abs") p.cfg.beta_abs = x;
    else if (cfg.sweep_param == "x0_over_L") p.cfg.x0_over_L = x;
    else if (cfg.sweep_param == "A") {
      p.cfg.A = x;
      p.cfg.B = -1.0;
    } else {
      throw config_error("unsupported sweep_param '" + cfg.sweep_param + "'");
    }
    p.curve = cfg.sweep_param;
    spec.points.push_back(p);
  }
  return spec;
}

namespace {

SweepRow evaluate_point(const SweepPoint& point, int index) {
  SweepRow row;
  row.index = index;
  row.point = point;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.entropy = row.a_i = row.a_z = row.a_x = row.a_y = nan;
  row.resolution = nan;
  try {
    const ModelPoint m = make_model(point.cfg);
    const PhaseResult pr = interferometric_phase(m.state, m.probe, m.qubit, m.cavity, m.settings);
    row.delta_gamma = pr.delta_gamma;
    row.visibility = pr.visibility;
    row.p_excite = pr.p_excite;
    row.eta_re = pr.eta.real();
    row.eta_im = pr.eta.imag();
    row.eta_ref_re = pr.eta_ref.real();
    row.eta_ref_im = pr.eta_ref.imag();
    row.flag_p_excite = pr.flag_p_excite;
    row.flag_negative_im = pr.flag_negative_im;
    row.qubit_sum_modes = pr.qubit_sum_modes;
    row.probe_sum_modes = pr.probe_sum_modes;

    const QubitDensityMatrix rho = reduced_qubit_state(m.state, m.probe, m.qubit, m.cavity,
                                                       m.settings);
    row.trace_residual = rho.trace_residual();
    row.hermiticity_residual = rho.hermiticity_residual;
    try {
      const double window = eigenvalue_window(m.probe, m.qubit, m.cavity);
      row.entropy = von_neumann_entropy(rho, window);
      const BlochObservables bo = bloch_observables(rho);
      row.a_i = bo.probability;
      row.a_z = bo.population_inversion;
      row.a_x = bo.dipole_moment;
      row.a_y = bo.dipole_current;
    } catch (const nonphysical_state_error&) {
      // Perturbative rho left the physical window (strong-coupling rows);
      // the phase outputs above stay valid, so only flag the rho block.
      row.flag_rho_invalid = true;
    }

    if (point.dalpha > 0.0) {
      BellCatState shifted = m.state;
      shifted.alpha = std::polar(std::abs(m.state.alpha) + point.dalpha, std::arg(m.state.alpha));
      const PhaseResult pr2 =
          interferometric_phase(shifted, m.probe, m.qubit, m.cavity, m.settings);
      row.resolution = std::abs(pr2.delta_gamma - pr.delta_gamma);
    }
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  const int n = static_cast<int>(spec.points.size());
  if (n == 0) throw config_error("sweep has an empty grid");
  std::vector<SweepRow> rows(n);

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, n);

  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      rows[i] = evaluate_point(spec.points[i], i);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string csv_header() {
  return "experiment,row,curve,L,c,v,kappa,mode_cutoff,lambda_p_T,r,x0_over_L,delta_over_omega,"
         "A,B,alpha_abs,theta,beta_abs,phi,dalpha,delta_gamma,visibility,p_excite,entropy,"
         "a_i,a_z,a_x,a_y,eta_re,eta_im,eta_ref_re,eta_ref_im,resolution,trace_residual,"
         "hermiticity_residual,qubit_sum_modes,probe_sum_modes,flag_p_excite,flag_negative_im,"
         "flag_rho_invalid,status";
}

std::string csv_line(const SweepRow& row, const std::string& experiment) {
  const RunConfig& c = row.point.cfg;
  std::ostringstream s;
  s << experiment << ',' << row.index << ',' << row.point.curve << ',' << fmt(c.L) << ','
    << fmt(c.c) << ',' << fmt(c.v) << ',' << c.kappa << ',' << c.mode_cutoff << ','
    << fmt(c.lambda_p_T) << ',' << fmt(c.lambda_q_over_lambda_p) << ',' << fmt(c.x0_over_L) << ','
    << fmt(c.delta_over_omega) << ',' << fmt(c.A) << ',' << fmt(c.amp_excited()) << ','
    << fmt(c.alpha_abs) << ',' << fmt(c.theta) << ',' << fmt(c.beta_abs) << ',' << fmt(c.phi)
    << ',' << fmt(row.point.dalpha) << ',' << fmt(row.delta_gamma) << ',' << fmt(row.visibility)
    << ',' << fmt(row.p_excite) << ',' << fmt(row.entropy) << ',' << fmt(row.a_i) << ','
    << fmt(row.a_z) << ',' << fmt(row.a_x) << ',' << fmt(row.a_y) << ',' << fmt(row.eta_re) << ','
    << fmt(row.eta_im) << ',' << fmt(row.eta_ref_re) << ',' << fmt(row.eta_ref_im) << ','
    << fmt(row.resolution) << ',' << fmt(row.trace_residual) << ','
    << fmt(row.hermiticity_residual) << ',' << row.qubit_sum_modes << ',' << row.probe_sum_modes
    << ',' << (row.flag_p_excite ? 1 : 0) << ',' << (row.flag_negative_im ? 1 : 0) << ','
    << (row.flag_rho_invalid ? 1 : 0) << ',' << row.status;
  return s.str();
}

void write_csv(const std::vector<SweepRow>& rows, const std::string& experiment,
               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open CSV output path: " + path);
  out << csv_header() << '\n';
  for (const SweepRow& row : rows) out << csv_line(row, experiment) << '\n';
  if (!out) throw config_error("failed writing CSV: " + path);
}

void write_manifest(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                    const std::string& csv_path, double wall_seconds, int threads,
                    const std::string& path) {
  int failed = 0, flagged = 0;
  int max_qubit_modes = 0, max_probe_modes = 0;
  for (const SweepRow& r : rows) {
    if (!r.ok) ++failed;
    if (r.flag_p_excite || r.flag_negative_im || r.flag_rho_invalid) ++flagged;
    max_qubit_modes = std::max(max_qubit_modes, r.qubit_sum_modes);
    max_probe_modes = std::max(max_probe_modes, r.probe_sum_modes);
  }
  json j;
  j["code_version"] = kCodeVersion;
  j["experiment"] = spec.experiment;
  j["config"] = spec.config_echo;
  j["rows"] = rows.size();
  j["rows_failed"] = failed;
  j["rows_flagged"] = flagged;
  j["csv"] = csv_path;
  j["threads"] = threads;
  j["wall_seconds"] = wall_seconds;
  j["max_qubit_sum_modes"] = max_qubit_modes;
  j["max_probe_sum_modes"] = max_probe_modes;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open manifest output path: " + path);
  out << j.dump(2) << '\n';
}

SweepSpec spec_from_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open manifest: " + path);
  json j;
  in >> j;
  const std::string experiment = j.at("experiment").get<std::string>();
  if (experiment != "custom") return make_preset(experiment);
  return make_custom_sweep(parse_config_text(j.at("config").get<std::string>()));
}

bool all_rows_clean(const std::vector<SweepRow>& rows) {
  for (const SweepRow& r : rows)
    if (!r.ok || r.flag_p_excite || r.flag_negative_im || r.flag_rho_invalid) return false;
  return true;
}

void write_plot_script(const std::string& experiment, const std::string& csv_path,
                       const std::string& script_path) {
  struct Layout {
    const char* x;
    const char* y;       // comma-separated output columns
    const char* panel_key;  // input column selecting the panel
    const char* curve_key;  // input column labelling curves within a panel
  };
  Layout lay{"alpha_abs", "delta_gamma", "r", "beta_abs"};
  if (experiment == "fig3-phase-vs-position") lay = {"x0_over_L", "delta_gamma", "alpha_abs", "A"};
  else if (experiment == "fig4-bloch-vs-phase") lay = {"delta_gamma", "a_z,a_x,a_y", "alpha_abs", "A"};
  else if (experiment == "fig5to7-entropy-vs-phase") lay = {"delta_gamma", "entropy", "curve", "beta_abs"};
  else if (experiment == "fig-resolution") lay = {"alpha_abs", "resolution", "r", "dalpha"};
  else if (experiment == "fig-visibility") lay = {"alpha_abs", "visibility", "r", "beta_abs"};

  std::ofstream out(script_path, std::ios::binary);
  if (!out) throw config_error("cannot open plot script path: " + script_path);
  out << "#!/usr/bin/env python3\n"
      << "\"\"\"Rendering script generated for experiment " << experiment << ".\"\"\"\n"
      << "import csv, math, collections\n"
      << "import matplotlib\n"
      << "matplotlib.use('Agg')\n"
      << "import matplotlib.pyplot as plt\n\n"
      << "CSV = " << json(csv_path).dump() << "\n"
      << "X, PANEL, CURVE = " << json(lay.x).dump() << ", " << json(lay.panel_key).dump() << ", "
      << json(lay.curve_key).dump() << "\n"
      << "Y_COLS = " << json(lay.y).dump() << ".split(',')\n\n"
      << "rows = [r for r in csv.DictReader(open(CSV)) if r['status'] == 'ok']\n"
      << "panels = collections.OrderedDict()\n"
      << "for r in rows:\n"
      << "    for ycol in Y_COLS:\n"
      << "        x, y = float(r[X]), float(r[ycol])\n"
      << "        if math.isnan(x) or math.isnan(y):\n"
      << "            continue\n"
      << "        label = ycol if len(Y_COLS) > 1 else r[CURVE]\n"
      << "        panels.setdefault(r[PANEL], collections.OrderedDict()).setdefault(\n"
      << "            label, []).append((x, y))\n"
      << "fig, axes = plt.subplots(1, max(len(panels), 1), figsize=(5 * max(len(panels), 1), 4))\n"
      << "if len(panels) <= 1:\n"
      << "    axes = [axes]\n"
      << "for ax, (panel, curves) in zip(axes, panels.items()):\n"
      << "    for label, xy in curves.items():\n"
      << "        xy.sort()\n"
      << "        ax.plot([p[0] for p in xy], [p[1] for p in xy], label=str(label))\n"
      << "    ax.set_xlabel(X)\n"
      << "    ax.set_ylabel(','.join(Y_COLS))\n"
      << "    ax.set_title(f'{PANEL}={panel}')\n"
      << "    ax.legend(fontsize=7)\n"
      << "fig.tight_layout()\n"
      << "fig.savefig(" << json(experiment + ".png").dump() << ", dpi=150)\n"
      << "print('wrote " << experiment << ".png')\n";
}

}  // namespace catprobe
