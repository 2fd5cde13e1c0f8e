#pragma once

#include <complex>
#include <stdexcept>
#include <string>

/// \file units.hpp
/// Physical parameter sets for the probed cavity and the dimensionless
/// internal unit system (L = 1, c = 1, frequencies in units of c/L) shared
/// by the rest of the library.  All types are immutable value types; every
/// operation on them is a pure function.

namespace catprobe {

using complex = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

/// Thrown when a configuration violates a model invariant.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One-dimensional cavity with Dirichlet walls.  The mode ladder is
/// k_g = g*pi/L, w_g = c*k_g for mode index g >= 1.
struct CavityConfig {
  double length = 1.0;       ///< L
  double light_speed = 1.0;  ///< c
  int resonant_mode = 2;     ///< kappa; must be even for mode invisibility
  int mode_cutoff = 0;       ///< hard cap for mode sums; 0 = adaptive default

  double wavenumber(int mode) const { return static_cast<double>(mode) * pi / length; }
  double mode_frequency(int mode) const { return light_speed * wavenumber(mode); }
  double resonant_frequency() const { return mode_frequency(resonant_mode); }
  int effective_mode_cutoff() const { return mode_cutoff > 0 ? mode_cutoff : 500000; }
};

/// Two-level probe crossing the cavity at constant speed; resonant with the
/// occupied mode, so the gap is derived, never free.
struct ProbeConfig {
  double speed = 0.1;     ///< v, in the same units as light_speed
  double coupling = 0.0;  ///< lambda_p (angular frequency units)
  double gap = 0.0;       ///< Omega_p = w_kappa, set by resonant()

  static ProbeConfig resonant(const CavityConfig& cavity, double speed, double coupling) {
    ProbeConfig p;
    p.speed = speed;
    p.coupling = coupling;
    p.gap = cavity.resonant_frequency();
    return p;
  }

  double transit_time(const CavityConfig& cavity) const { return cavity.length / speed; }
};

/// Stationary qubit inside the cavity, detuned from the occupied mode.
struct QubitConfig {
  double position = 0.25;  ///< x0 in [0, L]
  double coupling = 0.0;   ///< lambda_q
  double detuning = 0.0;   ///< delta = w_kappa - Omega_q (either sign)
  double gap = 0.0;        ///< Omega_q, set by detuned()

  static QubitConfig detuned(const CavityConfig& cavity, double position, double coupling,
                             double detuning) {
    QubitConfig q;
    q.position = position;
    q.coupling = coupling;
    q.detuning = detuning;
    q.gap = cavity.resonant_frequency() - detuning;
    return q;
  }
};

/// Entangled qubit-field state A|g,alpha> + B|e,beta> in the resonant mode.
struct BellCatState {
  double amp_ground = 1.0;   ///< A (real)
  double amp_excited = 0.0;  ///< B (real)
  complex alpha{0.0, 0.0};
  complex beta{0.0, 0.0};

  static BellCatState from_polar(double amp_ground, double amp_excited, double alpha_abs,
                                 double theta, double beta_abs, double phi) {
    BellCatState s;
    s.amp_ground = amp_ground;
    s.amp_excited = amp_excited;
    s.alpha = std::polar(alpha_abs, theta);
    s.beta = std::polar(beta_abs, phi);
    return s;
  }
};

/// Validates all invariants; throws config_error with the offending field.
void validate(const CavityConfig& cavity);
void validate(const CavityConfig& cavity, const ProbeConfig& probe);
void validate(const CavityConfig& cavity, const QubitConfig& qubit);
void validate(const BellCatState& state);
void validate_all(const CavityConfig& cavity, const ProbeConfig& probe, const QubitConfig& qubit,
                  const BellCatState& state);

/// Scale factors relating an SI parameter set to the internal one.
struct UnitScales {
  double length = 1.0;  ///< metres per internal length unit (= L)
  double time = 1.0;    ///< seconds per internal time unit (= L/c)
};

struct InternalModel {
  CavityConfig cavity;
  ProbeConfig probe;
  QubitConfig qubit;
  UnitScales scales;
};

/// Rescales a validated SI parameter set so that L = 1 and c = 1.  All
/// frequencies (gaps, couplings, detuning) come out in units of c/L.
InternalModel to_internal_units(const CavityConfig& cavity, const ProbeConfig& probe,
                                const QubitConfig& qubit);

/// Inverse map; to_si(to_internal_units(x)) reproduces x to ~1e-12 relative.
void to_si(const InternalModel& model, CavityConfig& cavity, ProbeConfig& probe,
           QubitConfig& qubit);

/// Complex number carried as (log-magnitude, phase) so that overlaps such as
/// <beta|alpha> at |alpha| = |beta| = 300 stay representable.  value() is the
/// ordinary complex, 0 when the magnitude underflows.
struct LogComplex {
  double log_abs = 0.0;
  double arg = 0.0;

  complex value() const {
    double mag = std::exp(log_abs);
    return {mag * std::cos(arg), mag * std::sin(arg)};
  }
};

/// Coherent-state overlap <beta|alpha> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(beta)*alpha).
LogComplex coherent_overlap(complex alpha, complex beta);

/// Wraps an angle into the principal interval (-pi, pi].
double wrap_angle(double x);

}  // namespace catprobe
