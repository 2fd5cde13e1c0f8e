#include "catprobe/qubit_state.hpp"

#include <cmath>

namespace catprobe {

namespace {
constexpr complex imag_unit{0.0, 1.0};
}

QubitDensityMatrix reduced_qubit_state(const BellCatState& state, const ProbeConfig& probe,
                                       const QubitConfig& qubit, const CavityConfig& cavity,
                                       const ObservableSettings& settings) {
  const KernelContext ctx(cavity, probe, qubit);
  const int k = cavity.resonant_mode;
  const int cutoff = cavity.effective_mode_cutoff();
  const double a = state.amp_ground;
  const double b = state.amp_excited;
  const double a2 = a * a, b2 = b * b;
  const complex al = state.alpha;
  const complex be = state.beta;
  const double lq = qubit.coupling;
  const double lq2 = lq * lq;

  const complex ov_ba = coherent_overlap(al, be).value();  // <beta|alpha>
  const complex ov_ab = std::conj(ov_ba);                  // <alpha|beta>

  const complex ip = single_integral(iplus(k), ctx);
  const complex im = single_integral(iminus(k), ctx);

  // ---- zeroth order: trace-out of the Bell-cat state ----
  double gg = a2;
  double ee = b2;
  complex eg = a * b * ov_ab;
  complex ge = a * b * ov_ba;

  // ---- first order (one qubit vertex against the cross branch) ----
  const complex z_gg = ov_ab * (std::conj(al) * im + be * std::conj(ip));
  const complex z_ee = ov_ba * (std::conj(be) * ip + al * std::conj(im));
  gg += 2.0 * lq * a * b * z_gg.imag();
  ee += 2.0 * lq * a * b * z_ee.imag();
  eg += imag_unit * lq *
        (b2 * (std::conj(be) * ip + be * std::conj(im)) -
         a2 * (std::conj(al) * ip + al * std::conj(im)));
  ge += -imag_unit * lq *
        (b2 * (be * std::conj(ip) + std::conj(be) * im) -
         a2 * (al * std::conj(ip) + std::conj(al) * im));

  // ---- second order (lambda_q^2 only: a unitary acting on field and probe
  // alone drops out of the qubit partial trace, so no lambda_p^2 terms) ----

  // Diagonals.  The U2 pieces and the U1 rho U1^dag ladders combine, through
  // the simplex identity {A,B} = A.B, into products of single integrals; the
  // net effect is a trace-preserving population transfer.
  const ModeSumResult ladder_plus = mode_sum(
      [&](int g) { return complex{std::norm(single_integral(iplus(g), ctx)), 0.0}; },
      settings.sum_rel_tol, cutoff, 20, kernel_noise_floor(ctx), settings.allow_cutoff_truncation);
  const ModeSumResult ladder_minus = mode_sum(
      [&](int g) { return complex{std::norm(single_integral(iminus(g), ctx)), 0.0}; },
      settings.sum_rel_tol, cutoff, 20, kernel_noise_floor(ctx), settings.allow_cutoff_truncation);

  const double shared = std::norm(ip) + std::norm(im);
  const double faa = ladder_plus.value.real() + std::norm(al) * shared +
                     2.0 * (std::conj(al) * std::conj(al) * ip * im).real();
  const double fbb = ladder_minus.value.real() + std::norm(be) * shared +
                     2.0 * (std::conj(be) * std::conj(be) * ip * im).real();
  gg += lq2 * (b2 * fbb - a2 * faa);
  ee += lq2 * (a2 * faa - b2 * fbb);

  // Off-diagonals, U2 pieces (term map; later kernel first).
  const ModeSumResult eg_vac = mode_sum(
      [&](int g) {
        return ordered_product(iminus(g).conj(), iminus(g), ctx) +
               ordered_product(iplus(g), iplus(g).conj(), ctx);
      },
      settings.sum_rel_tol, cutoff, 20, kernel_noise_floor(ctx), settings.allow_cutoff_truncation);
  const complex eg_u2 =
      ov_ab * (eg_vac.value +
               2.0 * std::conj(al) * be *
                   (ordered_product(iplus(k), iplus(k).conj(), ctx) +
                    ordered_product(iminus(k).conj(), iminus(k), ctx)) +
               2.0 * std::conj(al) * std::conj(al) * ordered_product(iplus(k), iminus(k), ctx) +
               2.0 * be * be * ordered_product(iminus(k).conj(), iplus(k).conj(), ctx));

  const ModeSumResult ge_vac = mode_sum(
      [&](int g) {
        return ordered_product(iplus(g).conj(), iplus(g), ctx) +
               ordered_product(iminus(g), iminus(g).conj(), ctx);
      },
      settings.sum_rel_tol, cutoff, 20, kernel_noise_floor(ctx), settings.allow_cutoff_truncation);
  const complex ge_u2 =
      ov_ba * (ge_vac.value +
               2.0 * al * std::conj(be) *
                   (ordered_product(iplus(k).conj(), iplus(k), ctx) +
                    ordered_product(iminus(k), iminus(k).conj(), ctx)) +
               2.0 * std::conj(be) * std::conj(be) * ordered_product(iminus(k), iplus(k), ctx) +
               2.0 * al * al * ordered_product(iplus(k).conj(), iminus(k).conj(), ctx));

  // Off-diagonals, U1 rho U1^dag: single-photon ladders on the two branches.
  const ModeSumResult cross_vac = mode_sum(
      [&](int g) {
        return std::conj(single_integral(iplus(g), ctx)) * single_integral(iminus(g), ctx);
      },
      settings.sum_rel_tol, cutoff, 20, kernel_noise_floor(ctx), settings.allow_cutoff_truncation);
  const complex fab =
      ov_ab * (cross_vac.value + 2.0 * std::conj(al) * be * std::conj(ip) * im +
               be * be * std::conj(ip) * std::conj(ip) + std::conj(al) * std::conj(al) * im * im);
  const complex fba =
      ov_ba * (std::conj(cross_vac.value) + 2.0 * al * std::conj(be) * ip * std::conj(im) +
               std::conj(be) * std::conj(be) * ip * ip + al * al * std::conj(im) * std::conj(im));

  eg += lq2 * a * b * (-eg_u2 + fba);
  ge += lq2 * a * b * (-ge_u2 + fab);

  // ---- Hermitization: rho_eg is normative, rho_ge := conj(rho_eg) ----
  QubitDensityMatrix rho;
  rho.hermiticity_residual = std::abs(ge - std::conj(eg));
  rho.gg = gg;
  rho.ee = ee;
  rho.eg = eg;
  rho.ge = std::conj(eg);
  return rho;
}

std::array<double, 2> density_eigenvalues(const QubitDensityMatrix& rho, double window) {
  const double tr = (rho.gg + rho.ee).real();
  const double dz = (rho.ee - rho.gg).real();
  const double disc = 4.0 * (rho.ge * rho.eg).real() + dz * dz;
  const double root = std::sqrt(std::max(disc, 0.0));
  std::array<double, 2> pi_vals{0.5 * (tr + root), 0.5 * (tr - root)};
  for (double& p : pi_vals) {
    if (p < -window || p > 1.0 + window)
      throw nonphysical_state_error("density eigenvalue " + std::to_string(p) +
                                    " outside [-eps, 1+eps] with eps = " + std::to_string(window));
    p = std::min(std::max(p, 0.0), 1.0);
  }
  return pi_vals;
}

double von_neumann_entropy(const std::array<double, 2>& eigenvalues) {
  double s = 0.0;
  for (double p : eigenvalues)
    if (p > 0.0) s -= p * std::log2(p);
  return s;
}

double von_neumann_entropy(const QubitDensityMatrix& rho, double window) {
  return von_neumann_entropy(density_eigenvalues(rho, window));
}

BlochObservables bloch_observables(const QubitDensityMatrix& rho) {
  BlochObservables o;
  o.probability = (rho.ee + rho.gg).real();
  o.population_inversion = (rho.ee - rho.gg).real();
  o.dipole_moment = (rho.eg + rho.ge).real();
  o.dipole_current = ((rho.eg - rho.ge) / imag_unit).real();
  return o;
}

}  // namespace catprobe
