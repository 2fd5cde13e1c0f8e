#include "catprobe/units.hpp"

#include <cmath>

namespace catprobe {

namespace {

void fail(const std::string& what) { throw config_error(what); }

}  // namespace

void validate(const CavityConfig& cavity) {
  if (!(cavity.length > 0.0)) fail("cavity length must be > 0");
  if (!(cavity.light_speed > 0.0)) fail("light speed must be > 0");
  if (cavity.resonant_mode < 1) fail("resonant mode index must be >= 1");
  if (cavity.resonant_mode % 2 != 0)
    fail("resonant mode index must be even (mode invisibility needs an even mode)");
  if (cavity.mode_cutoff < 0) fail("mode cutoff must be positive or 0 (adaptive)");
}

void validate(const CavityConfig& cavity, const ProbeConfig& probe) {
  validate(cavity);
  if (!(probe.speed > 0.0)) fail("probe speed must be > 0");
  if (!(probe.speed < cavity.light_speed)) fail("probe speed must be < c");
  double w = cavity.resonant_frequency();
  if (std::abs(probe.gap - w) > 1e-12 * w)
    fail("probe gap must equal the resonant mode frequency");
}

void validate(const CavityConfig& cavity, const QubitConfig& qubit) {
  validate(cavity);
  if (qubit.position < 0.0 || qubit.position > cavity.length)
    fail("qubit position must lie in [0, L]");
  if (!(qubit.gap > 0.0)) fail("qubit gap must be > 0");
  // Off-resonance: Omega_q may not collide with any mode frequency.  The
  // nearest mode is the only candidate.
  double spacing = cavity.mode_frequency(1);
  int nearest = static_cast<int>(std::lround(qubit.gap / spacing));
  if (nearest >= 1 && nearest <= cavity.effective_mode_cutoff()) {
    double w = cavity.mode_frequency(nearest);
    if (std::abs(qubit.gap - w) < 1e-9 * w)
      fail("qubit gap collides with cavity mode " + std::to_string(nearest));
  }
}

void validate(const BellCatState& state) {
  double norm = state.amp_ground * state.amp_ground + state.amp_excited * state.amp_excited;
  if (std::abs(norm - 1.0) > 1e-9) fail("Bell-cat amplitudes must satisfy A^2 + B^2 = 1");
}

void validate_all(const CavityConfig& cavity, const ProbeConfig& probe, const QubitConfig& qubit,
                  const BellCatState& state) {
  validate(cavity, probe);
  validate(cavity, qubit);
  validate(state);
}

InternalModel to_internal_units(const CavityConfig& cavity, const ProbeConfig& probe,
                                const QubitConfig& qubit) {
  validate(cavity, probe);
  validate(cavity, qubit);

  InternalModel m;
  m.scales.length = cavity.length;
  m.scales.time = cavity.length / cavity.light_speed;

  m.cavity.length = 1.0;
  m.cavity.light_speed = 1.0;
  m.cavity.resonant_mode = cavity.resonant_mode;
  m.cavity.mode_cutoff = cavity.mode_cutoff;

  m.probe.speed = probe.speed / cavity.light_speed;
  m.probe.coupling = probe.coupling * m.scales.time;
  m.probe.gap = m.cavity.resonant_frequency();

  m.qubit.position = qubit.position / cavity.length;
  m.qubit.coupling = qubit.coupling * m.scales.time;
  m.qubit.detuning = qubit.detuning * m.scales.time;
  m.qubit.gap = m.cavity.resonant_frequency() - m.qubit.detuning;

  validate(m.cavity, m.qubit);
  return m;
}

void to_si(const InternalModel& model, CavityConfig& cavity, ProbeConfig& probe,
           QubitConfig& qubit) {
  cavity = model.cavity;
  cavity.length = model.scales.length;
  cavity.light_speed = model.scales.length / model.scales.time;

  probe.speed = model.probe.speed * cavity.light_speed;
  probe.coupling = model.probe.coupling / model.scales.time;
  probe.gap = cavity.resonant_frequency();

  qubit.position = model.qubit.position * model.scales.length;
  qubit.coupling = model.qubit.coupling / model.scales.time;
  qubit.detuning = model.qubit.detuning / model.scales.time;
  qubit.gap = cavity.resonant_frequency() - qubit.detuning;
}

LogComplex coherent_overlap(complex alpha, complex beta) {
  complex cross = std::conj(beta) * alpha;
  LogComplex r;
  r.log_abs = -0.5 * std::norm(alpha) - 0.5 * std::norm(beta) + cross.real();
  r.arg = cross.imag();
  return r;
}

double wrap_angle(double x) {
  double w = std::remainder(x, two_pi);
  if (w <= -pi) w += two_pi;
  return w;
}

}  // namespace catprobe
