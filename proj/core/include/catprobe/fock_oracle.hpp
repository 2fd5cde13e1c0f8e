#pragma once

#include <complex>
#include <vector>

#include "catprobe/qubit_state.hpp"
#include "catprobe/units.hpp"

/// \file fock_oracle.hpp
/// Brute-force integrator of the interaction-picture Schrodinger equation
/// for probe x qubit x field in a truncated Fock space.  Independent of
/// every closed form in the library; used to validate the perturbative
/// phase, excitation probability and reduced qubit state.

namespace catprobe {

struct FockTruncation {
  int n_max = 0;              ///< occupation cutoff for the occupied mode
  std::vector<int> modes;     ///< retained mode indices (sorted, unique)
  int vacuum_total_cap = 3;   ///< total excitation cap across the vacuum modes
  bool require_neighborhood = true;  ///< demand kappa +- 3 neighbours retained

  /// Cutoff large enough that the top of the coherent ladder is empty:
  /// n_max = ceil((|a|+|b|)^2) + 8 ceil(|a|+|b|) + 8.
  static int recommended_n_max(double amp_sum);

  static FockTruncation recommended(const BellCatState& state, const CavityConfig& cavity);
};

struct TruncationReport {
  double top_level_population = 0.0;  ///< weight in the top two Fock levels
  double cap_sector_population = 0.0; ///< weight at the vacuum excitation cap
  double norm_drift = 0.0;            ///< | ||psi(T)|| - ||psi(0)|| |
  int steps = 0;
  long dimension = 0;
};

struct OracleResult {
  complex overlap{1.0, 0.0};  ///< <psi(0)|psi(T)>
  double p_excite = 0.0;      ///< probe excitation probability
  QubitDensityMatrix rho_q;   ///< partial trace over probe and field
  TruncationReport report;
};

class oracle_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-step RK4 integration of i d|psi>/dt = H_I(t) |psi> over [0, T].
OracleResult fock_evolve(const BellCatState& state, const ProbeConfig& probe,
                         const QubitConfig& qubit, const CavityConfig& cavity,
                         const FockTruncation& trunc, int steps);

/// Step-halving wrapper: doubles the step count until the overlap moves by
/// less than overlap_tol, then returns the finest run.
OracleResult fock_evolve_adaptive(const BellCatState& state, const ProbeConfig& probe,
                                  const QubitConfig& qubit, const CavityConfig& cavity,
                                  const FockTruncation& trunc, double overlap_tol = 1e-8,
                                  int initial_steps = 2048, int max_steps = 1 << 17);

}  // namespace catprobe
