#include "catprobe/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace catprobe {

double RunConfig::amp_excited() const {
  if (B >= 0.0) return B;
  const double b2 = 1.0 - A * A;
  return b2 > 0.0 ? std::sqrt(b2) : 0.0;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("bad numeric value for key '" + key + "': " + v);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("bad integer value for key '" + key + "': " + v);
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "L") cfg.L = parse_double(key, val);
    else if (key == "c") cfg.c = parse_double(key, val);
    else if (key == "v") cfg.v = parse_double(key, val);
    else if (key == "kappa") cfg.kappa = parse_int(key, val);
    else if (key == "mode_cutoff") cfg.mode_cutoff = parse_int(key, val);
    else if (key == "lambda_p_T") cfg.lambda_p_T = parse_double(key, val);
    else if (key == "lambda_q_over_lambda_p") cfg.lambda_q_over_lambda_p = parse_double(key, val);
    else if (key == "x0_over_L") cfg.x0_over_L = parse_double(key, val);
    else if (key == "delta_over_omega") cfg.delta_over_omega = parse_double(key, val);
    else if (key == "A") cfg.A = parse_double(key, val);
    else if (key == "B") cfg.B = parse_double(key, val);
    else if (key == "alpha_abs") cfg.alpha_abs = parse_double(key, val);
    else if (key == "theta") cfg.theta = parse_double(key, val);
    else if (key == "beta_abs") cfg.beta_abs = parse_double(key, val);
    else if (key == "phi") cfg.phi = parse_double(key, val);
    else if (key == "tol") cfg.tol = parse_double(key, val);
    else if (key == "neg_im_tol") cfg.neg_im_tol = parse_double(key, val);
    else if (key == "sweep_param") cfg.sweep_param = val;
    else if (key == "sweep_min") cfg.sweep_min = parse_double(key, val);
    else if (key == "sweep_max") cfg.sweep_max = parse_double(key, val);
    else if (key == "sweep_points") cfg.sweep_points = parse_int(key, val);
    else throw config_error("unknown config key '" + key + "'");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_to_text(const RunConfig& cfg) {
  std::ostringstream out;
  out << "L = " << fmt(cfg.L) << "\n";
  out << "c = " << fmt(cfg.c) << "\n";
  out << "v = " << fmt(cfg.v) << "\n";
  out << "kappa = " << cfg.kappa << "\n";
  out << "mode_cutoff = " << cfg.mode_cutoff << "\n";
  out << "lambda_p_T = " << fmt(cfg.lambda_p_T) << "\n";
  out << "lambda_q_over_lambda_p = " << fmt(cfg.lambda_q_over_lambda_p) << "\n";
  out << "x0_over_L = " << fmt(cfg.x0_over_L) << "\n";
  out << "delta_over_omega = " << fmt(cfg.delta_over_omega) << "\n";
  out << "A = " << fmt(cfg.A) << "\n";
  out << "B = " << fmt(cfg.amp_excited()) << "\n";
  out << "alpha_abs = " << fmt(cfg.alpha_abs) << "\n";
  out << "theta = " << fmt(cfg.theta) << "\n";
  out << "beta_abs = " << fmt(cfg.beta_abs) << "\n";
  out << "phi = " << fmt(cfg.phi) << "\n";
  out << "tol = " << fmt(cfg.tol) << "\n";
  out << "neg_im_tol = " << fmt(cfg.neg_im_tol) << "\n";
  if (!cfg.sweep_param.empty()) {
    out << "sweep_param = " << cfg.sweep_param << "\n";
    out << "sweep_min = " << fmt(cfg.sweep_min) << "\n";
    out << "sweep_max = " << fmt(cfg.sweep_max) << "\n";
    out << "sweep_points = " << cfg.sweep_points << "\n";
  }
  return out.str();
}

ModelPoint make_model(const RunConfig& cfg) {
  CavityConfig cavity_si;
  cavity_si.length = cfg.L;
  cavity_si.light_speed = cfg.c;
  cavity_si.resonant_mode = cfg.kappa;
  cavity_si.mode_cutoff = cfg.mode_cutoff;
  validate(cavity_si);

  const double transit = cfg.L / cfg.v;
  const double lambda_p = cfg.lambda_p_T / transit;
  const double lambda_q = cfg.lambda_q_over_lambda_p * lambda_p;

  const ProbeConfig probe_si = ProbeConfig::resonant(cavity_si, cfg.v, lambda_p);
  const QubitConfig qubit_si =
      QubitConfig::detuned(cavity_si, cfg.x0_over_L * cfg.L, lambda_q,
                           cfg.delta_over_omega * cavity_si.resonant_frequency());

  const InternalModel internal = to_internal_units(cavity_si, probe_si, qubit_si);

  ModelPoint m;
  m.cavity = internal.cavity;
  m.probe = internal.probe;
  m.qubit = internal.qubit;
  m.state = BellCatState::from_polar(cfg.A, cfg.amp_excited(), cfg.alpha_abs, cfg.theta,
                                     cfg.beta_abs, cfg.phi);
  validate(m.state);
  m.settings.sum_rel_tol = cfg.tol;
  m.settings.neg_im_tol = cfg.neg_im_tol;
  return m;
}

}  // namespace catprobe
