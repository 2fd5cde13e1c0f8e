#pragma once

#include <array>
#include <complex>

#include "catprobe/observables.hpp"
#include "catprobe/units.hpp"

/// \file qubit_state.hpp
/// Reduced density matrix of the cavity qubit after the probe transit,
/// obtained by tracing out the cat field and the probe, and the derived
/// quantities: eigenvalues, von Neumann entropy, Bloch observables.

namespace catprobe {

struct QubitDensityMatrix {
  complex gg{1.0, 0.0};
  complex ge{0.0, 0.0};
  complex eg{0.0, 0.0};
  complex ee{0.0, 0.0};
  /// |rho_ge - conj(rho_eg)| before Hermitization (numerical residual of the
  /// two independently evaluated term maps).
  double hermiticity_residual = 0.0;

  double trace_residual() const { return (gg + ee).real() - 1.0; }
};

class nonphysical_state_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds the reduced qubit state to second order in the couplings.
/// Probe-field vertices trace out of the qubit state exactly (a unitary on
/// field and probe alone cannot move the qubit's partial trace), so only
/// lambda_q terms appear.  rho_ge and rho_eg are evaluated from separate
/// term maps; the off-diagonals are then symmetrized, with the residual
/// recorded.
QubitDensityMatrix reduced_qubit_state(const BellCatState& state, const ProbeConfig& probe,
                                       const QubitConfig& qubit, const CavityConfig& cavity,
                                       const ObservableSettings& settings = {});

/// Eigenvalues of a Hermitian 2x2 density matrix,
///   pi_+- = 1/2 [ (gg+ee) +- sqrt(4 ge eg + (ee-gg)^2) ],
/// clipped to [0, 1] after checking they lie in [-window, 1+window].
/// Throws nonphysical_state_error otherwise.  Pass window ~ 10 (lambda T)^4.
std::array<double, 2> density_eigenvalues(const QubitDensityMatrix& rho, double window);

/// Base-2 von Neumann entropy, with 0 log 0 := 0; range [0, 1].
double von_neumann_entropy(const std::array<double, 2>& eigenvalues);
double von_neumann_entropy(const QubitDensityMatrix& rho, double window);

struct BlochObservables {
  double probability = 1.0;          ///< A_I = rho_ee + rho_gg
  double population_inversion = 0.0; ///< A_z = rho_ee - rho_gg
  double dipole_moment = 0.0;        ///< A_x = rho_eg + rho_ge
  double dipole_current = 0.0;       ///< A_y = (rho_eg - rho_ge)/i
};

BlochObservables bloch_observables(const QubitDensityMatrix& rho);

/// Clip window matched to the perturbative truncation order.
inline double eigenvalue_window(const ProbeConfig& probe, const QubitConfig& qubit,
                                const CavityConfig& cavity) {
  const double t = probe.transit_time(cavity);
  const double lt = std::max(std::abs(probe.coupling), std::abs(qubit.coupling)) * t;
  const double w = 10.0 * lt * lt * lt * lt;
  return std::max(w, 1e-12);
}

}  // namespace catprobe
