// Command line front end: parameter sweeps over the mode-invisibility
// probing pipeline, config validation, and closed-form vs. brute-force
// oracle comparison.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "catprobe/fock_oracle.hpp"
#include "catprobe/sweep.hpp"

namespace fs = std::filesystem;
using namespace catprobe;

namespace {

int run_sweep_command(const std::string& target, const std::string& out_dir, int threads,
                      int mode_cutoff_override, double tol_override, double neg_im_tol_override,
                      bool from_manifest) {
  SweepSpec spec;
  if (from_manifest) {
    spec = spec_from_manifest(target);
  } else if (is_preset(target)) {
    spec = make_preset(target);
  } else {
    spec = make_custom_sweep(load_config(target));
  }
  for (SweepPoint& p : spec.points) {
    if (mode_cutoff_override > 0) p.cfg.mode_cutoff = mode_cutoff_override;
    if (tol_override > 0) p.cfg.tol = tol_override;
    if (neg_im_tol_override > 0) p.cfg.neg_im_tol = neg_im_tol_override;
  }

  fs::create_directories(out_dir);
  const std::string csv_path = (fs::path(out_dir) / (spec.experiment + ".csv")).string();
  const std::string manifest_path =
      (fs::path(out_dir) / (spec.experiment + ".manifest.json")).string();
  const std::string plot_path = (fs::path(out_dir) / ("plot_" + spec.experiment + ".py")).string();

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<SweepRow> rows = run_sweep(spec, threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  write_csv(rows, spec.experiment, csv_path);
  write_manifest(spec, rows, csv_path, wall, threads, manifest_path);
  write_plot_script(spec.experiment, csv_path, plot_path);

  int failed = 0, flagged = 0;
  for (const SweepRow& r : rows) {
    if (!r.ok) ++failed;
    if (r.flag_p_excite || r.flag_negative_im || r.flag_rho_invalid) ++flagged;
  }
  std::printf("%s: %zu rows (%d failed, %d flagged) in %.2f s -> %s\n", spec.experiment.c_str(),
              rows.size(), failed, flagged, wall, csv_path.c_str());
  return all_rows_clean(rows) ? 0 : 1;
}

int run_validate(const std::string& config_path) {
  const RunConfig cfg = load_config(config_path);
  const ModelPoint m = make_model(cfg);
  const double t = m.probe.transit_time(m.cavity);
  std::printf("config ok\n");
  std::printf("internal units: L=1 c=1  v=%.6g  T=%.6g\n", m.probe.speed, t);
  std::printf("resonant mode kappa=%d  w_kappa=%.6g  Omega_q=%.6g (detuning %.6g)\n",
              m.cavity.resonant_mode, m.cavity.resonant_frequency(), m.qubit.gap,
              m.qubit.detuning);
  std::printf("couplings: lambda_p*T=%.6g  lambda_q*T=%.6g\n", m.probe.coupling * t,
              m.qubit.coupling * t);
  return 0;
}

int run_oracle_compare(const std::string& config_path, int steps, int n_max_override,
                       int vacuum_cap, double arg_tol, double prob_tol, double rho_tol) {
  const RunConfig cfg = load_config(config_path);
  const ModelPoint m = make_model(cfg);

  FockTruncation trunc = FockTruncation::recommended(m.state, m.cavity);
  if (n_max_override > 0) trunc.n_max = n_max_override;
  trunc.vacuum_total_cap = vacuum_cap;

  // Match the closed-form mode sums to the oracle's retained modes.
  CavityConfig cavity = m.cavity;
  cavity.mode_cutoff = trunc.modes.back();

  std::printf("oracle: dim pending, steps start at %d ...\n", steps);
  const OracleResult oracle =
      fock_evolve_adaptive(m.state, m.probe, m.qubit, cavity, trunc, 1e-8, steps);

  const complex e1 = eta_first_order(m.state, m.qubit, cavity, m.probe.transit_time(cavity));
  const complex e2 = eta_second_order(m.state, m.probe, m.qubit, cavity, m.settings).total();
  const complex amp = 1.0 + e1 + e2;
  const double p_closed = transition_probability(m.state, m.probe, m.qubit, cavity, m.settings);
  const QubitDensityMatrix rho_closed =
      reduced_qubit_state(m.state, m.probe, m.qubit, cavity, m.settings);

  const double arg_err = std::abs(wrap_angle(std::arg(amp) - std::arg(oracle.overlap)));
  const double p_err =
      std::abs(p_closed - oracle.p_excite) / std::max(oracle.p_excite, 1e-300);
  double rho_err = 0.0;
  rho_err = std::max(rho_err, std::abs(rho_closed.gg - oracle.rho_q.gg));
  rho_err = std::max(rho_err, std::abs(rho_closed.ge - oracle.rho_q.ge));
  rho_err = std::max(rho_err, std::abs(rho_closed.eg - oracle.rho_q.eg));
  rho_err = std::max(rho_err, std::abs(rho_closed.ee - oracle.rho_q.ee));

  std::printf("oracle overlap        = %.12g %+.12gi  (|.| = %.12g)\n", oracle.overlap.real(),
              oracle.overlap.imag(), std::abs(oracle.overlap));
  std::printf("closed-form amplitude = %.12g %+.12gi\n", amp.real(), amp.imag());
  std::printf("phase:   |arg closed - arg oracle| = %.3e rad (tol %.1e)\n", arg_err, arg_tol);
  std::printf("P_e:     closed %.6e  oracle %.6e  rel err %.3e (tol %.1e)\n", p_closed,
              oracle.p_excite, p_err, prob_tol);
  std::printf("rho_q:   max entry abs err %.3e (tol %.1e)\n", rho_err, rho_tol);
  std::printf("steps %d, dimension %ld, norm drift %.2e, top-level pop %.2e\n",
              oracle.report.steps, oracle.report.dimension, oracle.report.norm_drift,
              oracle.report.top_level_population);

  const bool ok = arg_err <= arg_tol && p_err <= prob_tol && rho_err <= rho_tol;
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mode-invisibility probe of entangled qubit-cat states"};
  app.require_subcommand(1);

  // sweep
  std::string sweep_target, out_dir = "out";
  int threads = 0, mode_cutoff = 0;
  double tol = 0.0, neg_im_tol = 0.0;
  bool from_manifest = false;
  CLI::App* sweep = app.add_subcommand("sweep", "run a figure preset or a custom config sweep");
  sweep->add_option("target", sweep_target,
                    "preset name (fig2-phase-vs-alpha, fig3-phase-vs-position, "
                    "fig4-bloch-vs-phase, fig5to7-entropy-vs-phase, fig-resolution, "
                    "fig-visibility) or config path")
      ->required();
  sweep->add_option("-o,--out", out_dir, "output directory");
  sweep->add_option("-j,--threads", threads, "worker threads (0 = hardware)");
  sweep->add_option("--mode-cutoff", mode_cutoff, "override the mode-sum cutoff");
  sweep->add_option("--tol", tol, "override the mode-sum stall tolerance");
  sweep->add_option("--neg-im-tol", neg_im_tol, "override the Im(eta) flag threshold");
  sweep->add_flag("--rerun", from_manifest, "treat target as a manifest and re-run it");

  // validate
  std::string validate_path;
  CLI::App* val = app.add_subcommand("validate", "check a config and echo the internal units");
  val->add_option("config", validate_path, "config path")->required();

  // oracle-compare
  std::string oracle_path;
  int steps = 2048, n_max = 0, vac_cap = 3;
  double arg_tol = 1e-3, prob_tol = 1e-2, rho_tol = 1e-4;
  CLI::App* orc = app.add_subcommand(
      "oracle-compare", "compare closed forms against the truncated-Fock integrator");
  orc->add_option("config", oracle_path, "config path")->required();
  orc->add_option("--steps", steps, "initial RK4 step count");
  orc->add_option("--n-max", n_max, "override the occupied-mode Fock cutoff");
  orc->add_option("--vacuum-cap", vac_cap, "total excitation cap for vacuum modes");
  orc->add_option("--arg-tol", arg_tol, "phase comparison tolerance (rad)");
  orc->add_option("--prob-tol", prob_tol, "P_e relative tolerance");
  orc->add_option("--rho-tol", rho_tol, "reduced-state entrywise tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed())
      return run_sweep_command(sweep_target, out_dir, threads, mode_cutoff, tol, neg_im_tol,
                               from_manifest);
    if (val->parsed()) return run_validate(validate_path);
    if (orc->parsed())
      return run_oracle_compare(oracle_path, steps, n_max, vac_cap, arg_tol, prob_tol, rho_tol);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
