#pragma once

#include <complex>

#include "catprobe/dyson_kernels.hpp"
#include "catprobe/units.hpp"

/// \file observables.hpp
/// Probe observables of the mode-invisibility protocol: excitation
/// probability, the global phase acquired over the entangled cavity, the
/// vacuum reference phase, and the interferometric phase difference with
/// its visibility.

namespace catprobe {

/// Numerical knobs shared by the observable pipelines.
struct ObservableSettings {
  double sum_rel_tol = 1e-9;      ///< mode-sum stall tolerance
  double p_excite_flag = 1e-2;    ///< protocol-validity bound on P_e
  double neg_im_tol = 1e-8;       ///< tolerated negative Im(eta) before flagging
  /// Accept mode sums cut at mode_cutoff without the stall criterion; used
  /// when the cutoff deliberately matches an oracle's retained modes.
  bool allow_cutoff_truncation = false;
};

/// One fully assembled parameter point.
struct PhaseResult {
  complex eta{0.0, 0.0};      ///< global phase over the entangled cavity
  complex eta_ref{0.0, 0.0};  ///< phase over the vacuum reference cavity
  double delta_gamma = 0.0;   ///< wrapped Re(eta - eta_ref), in (-pi, pi]
  double visibility = 1.0;    ///< exp(-2 Im eta)
  double p_excite = 0.0;
  bool flag_p_excite = false;     ///< P_e above the protocol bound
  bool flag_negative_im = false;  ///< Im(eta) < -neg_im_tol (truncation artifact)
  int qubit_sum_modes = 0;        ///< truncation index of the qubit vacuum sums
  int probe_sum_modes = 0;        ///< truncation index of the probe vacuum sums
};

/// Probe excitation probability
///   P_e = lambda_p^2 [ (A^2|alpha|^2 + B^2|beta|^2) |X+(kappa)|^2 + sum_g |X+(g)|^2 ].
double transition_probability(const BellCatState& state, const ProbeConfig& probe,
                              const QubitConfig& qubit, const CavityConfig& cavity,
                              const ObservableSettings& settings = {});

/// First-order phase amplitude; purely imaginary by construction:
///   eta1 = -2i lambda_q A B Re[ (conj(I+) beta + I- conj(alpha)) <beta|alpha> ].
complex eta_first_order(const BellCatState& state, const QubitConfig& qubit,
                        const CavityConfig& cavity, double transit_time);

/// Second-order amplitude, split by origin.  The qubit coherent block holds
/// the eight single-mode circle terms that cancel for a maximally entangled
/// state with |alpha| = |beta| and theta = -phi.
struct EtaSecondOrder {
  complex qubit_coherent{0.0, 0.0};
  complex qubit_vacuum{0.0, 0.0};
  complex probe_resonant{0.0, 0.0};
  complex probe_vacuum{0.0, 0.0};
  int qubit_sum_modes = 0;
  int probe_sum_modes = 0;

  complex total() const { return qubit_coherent + qubit_vacuum + probe_resonant + probe_vacuum; }
};

EtaSecondOrder eta_second_order(const BellCatState& state, const ProbeConfig& probe,
                                const QubitConfig& qubit, const CavityConfig& cavity,
                                const ObservableSettings& settings = {});

class degenerate_amplitude_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// eta = -i Log(1 + eta1 + eta2), principal branch.  Throws
/// degenerate_amplitude_error when |1 + eta1 + eta2| < 1e-12.
complex eta_total(const BellCatState& state, const ProbeConfig& probe, const QubitConfig& qubit,
                  const CavityConfig& cavity, const ObservableSettings& settings = {});

/// Reference phase over a vacuum cavity:
///   eta_R = -i Log(1 - lambda_p^2 sum_g conj(X+(g)) o X+(g)).
complex eta_reference(const ProbeConfig& probe, const CavityConfig& cavity,
                      const ObservableSettings& settings = {});

/// Full pipeline for one parameter point.
PhaseResult interferometric_phase(const BellCatState& state, const ProbeConfig& probe,
                                  const QubitConfig& qubit, const CavityConfig& cavity,
                                  const ObservableSettings& settings = {});

/// Interferometric resolution |delta_gamma(|alpha|+dalpha) - delta_gamma(|alpha|)|
/// with every other parameter held fixed.
double phase_resolution(const BellCatState& state, const ProbeConfig& probe,
                        const QubitConfig& qubit, const CavityConfig& cavity, double dalpha,
                        const ObservableSettings& settings = {});

}  // namespace catprobe
