#include "catprobe/observables.hpp"

#include <cmath>

namespace catprobe {

namespace {

constexpr complex imag_unit{0.0, 1.0};

double norm2(complex z) { return std::norm(z); }

}  // namespace

double transition_probability(const BellCatState& state, const ProbeConfig& probe,
                              const QubitConfig& qubit, const CavityConfig& cavity,
                              const ObservableSettings& settings) {
  const KernelContext ctx(cavity, probe, qubit);
  const int kappa = cavity.resonant_mode;
  const double lp2 = probe.coupling * probe.coupling;
  const double occupied = state.amp_ground * state.amp_ground * norm2(state.alpha) +
                          state.amp_excited * state.amp_excited * norm2(state.beta);

  const double resonant = norm2(single_integral(xplus(kappa), ctx));
  const ModeSumResult vac = mode_sum(
      [&](int g) { return complex{norm2(single_integral(xplus(g), ctx)), 0.0}; },
      settings.sum_rel_tol, cavity.effective_mode_cutoff(), 20, kernel_noise_floor(ctx), settings.allow_cutoff_truncation);

  return lp2 * (occupied * resonant + vac.value.real());
}

complex eta_first_order(const BellCatState& state, const QubitConfig& qubit,
                        const CavityConfig& cavity, double transit_time) {
  // All integrals live at the resonant mode; the overlap factor suppresses
  // the bracket for theta = -phi, and B = 0 or a nodal x0 kill it outright.
  const int kappa = cavity.resonant_mode;
  const double w = std::sin(cavity.wavenumber(kappa) * qubit.position) /
                   std::sqrt(static_cast<double>(kappa) * pi);
  const double wq_plus = qubit.gap + cavity.mode_frequency(kappa);
  const double wq_minus = -qubit.gap + cavity.mode_frequency(kappa);
  const complex i_plus = w * transit_time * phi1(complex{wq_plus * transit_time, 0.0});
  const complex i_minus = w * transit_time * phi1(complex{wq_minus * transit_time, 0.0});

  const complex ov_ba = coherent_overlap(state.alpha, state.beta).value();  // <beta|alpha>
  const complex bracket = std::conj(i_plus) * state.beta + i_minus * std::conj(state.alpha);
  const double re = (bracket * std::conj(ov_ba)).real();  // Re[bracket <alpha|beta>]
  return -2.0 * imag_unit * qubit.coupling * state.amp_ground * state.amp_excited * re;
}

EtaSecondOrder eta_second_order(const BellCatState& state, const ProbeConfig& probe,
                                const QubitConfig& qubit, const CavityConfig& cavity,
                                const ObservableSettings& settings) {
  const KernelContext ctx(cavity, probe, qubit);
  const int k = cavity.resonant_mode;
  const int cutoff = cavity.effective_mode_cutoff();
  const double a2 = state.amp_ground * state.amp_ground;
  const double b2 = state.amp_excited * state.amp_excited;
  const complex al = state.alpha;
  const complex be = state.beta;
  const double lq2 = qubit.coupling * qubit.coupling;
  const double lp2 = probe.coupling * probe.coupling;

  EtaSecondOrder r;

  // Qubit block, occupied mode.  Term map (later kernel first):
  //   branch A (qubit ground, field alpha):
  //     |alpha|^2 (I+* o I+  +  I- o I-*),  conj(alpha)^2 I- o I+,  alpha^2 I+* o I-*
  //   branch B (qubit excited, field beta):
  //     |beta|^2  (I+ o I+*  +  I-* o I-),  conj(beta)^2 I+ o I-,   beta^2  I-* o I+*
  const complex coh_a =
      norm2(al) * (ordered_product(iplus(k).conj(), iplus(k), ctx) +
                   ordered_product(iminus(k), iminus(k).conj(), ctx)) +
      std::conj(al) * std::conj(al) * ordered_product(iminus(k), iplus(k), ctx) +
      al * al * ordered_product(iplus(k).conj(), iminus(k).conj(), ctx);
  const complex coh_b =
      norm2(be) * (ordered_product(iplus(k), iplus(k).conj(), ctx) +
                   ordered_product(iminus(k).conj(), iminus(k), ctx)) +
      std::conj(be) * std::conj(be) * ordered_product(iplus(k), iminus(k), ctx) +
      be * be * ordered_product(iminus(k).conj(), iplus(k).conj(), ctx);
  r.qubit_coherent = -lq2 * (a2 * coh_a + b2 * coh_b);

  // Qubit block, vacuum sums over every mode (the +1 of 1+|alpha|^2 lives here).
  const ModeSumResult vac_q = mode_sum(
      [&](int g) {
        return a2 * ordered_product(iplus(g).conj(), iplus(g), ctx) +
               b2 * ordered_product(iminus(g).conj(), iminus(g), ctx);
      },
      settings.sum_rel_tol, cutoff, 20, kernel_noise_floor(ctx), settings.allow_cutoff_truncation);
  r.qubit_vacuum = -lq2 * vac_q.value;
  r.qubit_sum_modes = vac_q.last_mode;

  // Probe block.  The X- o X-* term vanishes identically for an even
  // resonant mode at resonance and is kept for completeness.
  const complex occupied = a2 * norm2(al) + b2 * norm2(be);
  const complex counter = a2 * std::conj(al) * std::conj(al) + b2 * std::conj(be) * std::conj(be);
  const complex rotating = a2 * al * al + b2 * be * be;
  r.probe_resonant =
      -lp2 * (occupied * (ordered_product(xplus(k).conj(), xplus(k), ctx) +
                          ordered_product(xminus(k), xminus(k).conj(), ctx)) +
              counter * ordered_product(xminus(k), xplus(k), ctx) +
              rotating * ordered_product(xplus(k).conj(), xminus(k).conj(), ctx));

  const ModeSumResult vac_p = mode_sum(
      [&](int g) { return ordered_product(xplus(g).conj(), xplus(g), ctx); },
      settings.sum_rel_tol, cutoff, 20, kernel_noise_floor(ctx), settings.allow_cutoff_truncation);
  r.probe_vacuum = -lp2 * vac_p.value;
  r.probe_sum_modes = vac_p.last_mode;

  return r;
}

complex eta_total(const BellCatState& state, const ProbeConfig& probe, const QubitConfig& qubit,
                  const CavityConfig& cavity, const ObservableSettings& settings) {
  const complex e1 = eta_first_order(state, qubit, cavity, probe.transit_time(cavity));
  const complex e2 = eta_second_order(state, probe, qubit, cavity, settings).total();
  const complex amp = 1.0 + e1 + e2;
  if (std::abs(amp) < 1e-12)
    throw degenerate_amplitude_error("|1 + eta1 + eta2| < 1e-12: phase undefined");
  return -imag_unit * std::log(amp);
}

complex eta_reference(const ProbeConfig& probe, const CavityConfig& cavity,
                      const ObservableSettings& settings) {
  // The reference cavity holds vacuum, so only the probe vacuum sum remains.
  const QubitConfig idle{};
  KernelContext ctx(cavity, probe, idle);
  const double lp2 = probe.coupling * probe.coupling;
  const ModeSumResult vac = mode_sum(
      [&](int g) { return ordered_product(xplus(g).conj(), xplus(g), ctx); },
      settings.sum_rel_tol, cavity.effective_mode_cutoff(), 20, kernel_noise_floor(ctx), settings.allow_cutoff_truncation);
  return -imag_unit * std::log(1.0 - lp2 * vac.value);
}

PhaseResult interferometric_phase(const BellCatState& state, const ProbeConfig& probe,
                                  const QubitConfig& qubit, const CavityConfig& cavity,
                                  const ObservableSettings& settings) {
  PhaseResult r;
  const complex e1 = eta_first_order(state, qubit, cavity, probe.transit_time(cavity));
  const EtaSecondOrder e2 = eta_second_order(state, probe, qubit, cavity, settings);
  const complex amp = 1.0 + e1 + e2.total();
  if (std::abs(amp) < 1e-12)
    throw degenerate_amplitude_error("|1 + eta1 + eta2| < 1e-12: phase undefined");
  r.eta = -imag_unit * std::log(amp);
  r.eta_ref = eta_reference(probe, cavity, settings);
  r.delta_gamma = wrap_angle(r.eta.real() - r.eta_ref.real());
  r.visibility = std::exp(-2.0 * r.eta.imag());
  r.p_excite = transition_probability(state, probe, qubit, cavity, settings);
  r.flag_p_excite = r.p_excite > settings.p_excite_flag;
  r.flag_negative_im = r.eta.imag() < -settings.neg_im_tol;
  r.qubit_sum_modes = e2.qubit_sum_modes;
  r.probe_sum_modes = e2.probe_sum_modes;
  return r;
}

double phase_resolution(const BellCatState& state, const ProbeConfig& probe,
                        const QubitConfig& qubit, const CavityConfig& cavity, double dalpha,
                        const ObservableSettings& settings) {
  if (dalpha < 0.0) throw config_error("phase resolution step must be >= 0");
  BellCatState shifted = state;
  shifted.alpha = std::polar(std::abs(state.alpha) + dalpha, std::arg(state.alpha));
  const double g0 = interferometric_phase(state, probe, qubit, cavity, settings).delta_gamma;
  const double g1 = interferometric_phase(shifted, probe, qubit, cavity, settings).delta_gamma;
  return std::abs(g1 - g0);
}

}  // namespace catprobe
