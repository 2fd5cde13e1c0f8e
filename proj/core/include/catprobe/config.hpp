#pragma once

#include <string>

#include "catprobe/observables.hpp"
#include "catprobe/units.hpp"

/// \file config.hpp
/// Plain-text configuration: `key = value` lines, `#` comments.  Key names
/// are normative; unknown keys are rejected.

namespace catprobe {

struct RunConfig {
  // geometry and couplings (SI or already-internal units)
  double L = 1.0;
  double c = 1.0;
  double v = 0.1;
  int kappa = 2;
  int mode_cutoff = 0;
  double lambda_p_T = 1e-2;              ///< dimensionless lambda_p * T
  double lambda_q_over_lambda_p = 1.0;   ///< coupling ratio r
  double x0_over_L = 0.25;
  double delta_over_omega = -0.2;        ///< detuning in units of w_kappa

  // Bell-cat state
  double A = 0.7071067811865476;
  double B = -1.0;  ///< derived as sqrt(1 - A^2) when negative
  double alpha_abs = 1.0;
  double theta = 0.5 * pi;
  double beta_abs = 1.0;
  double phi = -0.5 * pi;

  // numerics
  double tol = 1e-9;          ///< mode-sum stall tolerance
  double neg_im_tol = 1e-8;   ///< Im(eta) flag threshold

  // optional sweep block (used by the `sweep` subcommand on custom configs)
  std::string sweep_param;    ///< one of alpha_abs | beta_abs | x0_over_L | A
  double sweep_min = 0.0;
  double sweep_max = 0.0;
  int sweep_points = 0;

  double amp_excited() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Serializes back to config text (round-trips through parse_config_text).
std::string config_to_text(const RunConfig& cfg);

/// Fully resolved internal-unit model for one parameter point.
struct ModelPoint {
  CavityConfig cavity;
  ProbeConfig probe;
  QubitConfig qubit;
  BellCatState state;
  ObservableSettings settings;
};

ModelPoint make_model(const RunConfig& cfg);

}  // namespace catprobe
