#include "catprobe/dyson_kernels.hpp"

#include <cmath>

namespace catprobe {

namespace {
constexpr complex imag_unit{0.0, 1.0};
}

KernelExpansion KernelContext::expand(const Kernel& k) const {
  KernelExpansion e;
  const double w = cavity_.mode_frequency(k.mode);
  const double root = std::sqrt(static_cast<double>(k.mode) * pi);
  if (k.family == Kernel::Family::qubit) {
    const double base = k.sign * qubit_.gap + w;
    e.count = 1;
    e.freq[0] = k.conjugated ? -base : base;
    e.coeff[0] = std::sin(cavity_.wavenumber(k.mode) * qubit_.position) / root;
  } else {
    const double base = k.sign * probe_.gap + w;
    const double doppler = cavity_.wavenumber(k.mode) * probe_.speed;
    // sin(k v t) = (e^{i k v t} - e^{-i k v t}) / (2i)
    const complex c = 1.0 / (2.0 * imag_unit * root);
    e.count = 2;
    if (!k.conjugated) {
      e.freq[0] = base + doppler;
      e.freq[1] = base - doppler;
      e.coeff[0] = c;
      e.coeff[1] = -c;
    } else {
      e.freq[0] = -(base + doppler);
      e.freq[1] = -(base - doppler);
      e.coeff[0] = std::conj(c);
      e.coeff[1] = -std::conj(c);
    }
  }
  return e;
}

complex single_integral(const Kernel& k, const KernelContext& ctx) {
  const KernelExpansion e = ctx.expand(k);
  const double t = ctx.transit_time();
  complex sum{0.0, 0.0};
  for (int i = 0; i < e.count; ++i)
    sum += e.coeff[i] * t * phi1(complex{e.freq[i] * t, 0.0});
  return sum;
}

complex ordered_product(const Kernel& later, const Kernel& earlier, const KernelContext& ctx) {
  const KernelExpansion el = ctx.expand(later);
  const KernelExpansion ee = ctx.expand(earlier);
  const double t = ctx.transit_time();
  complex sum{0.0, 0.0};
  for (int i = 0; i < el.count; ++i)
    for (int j = 0; j < ee.count; ++j)
      sum += el.coeff[i] * ee.coeff[j] * ordered_double_exp(el.freq[i], ee.freq[j], t);
  return sum;
}

complex anticommutator_product(const Kernel& a, const Kernel& b, const KernelContext& ctx) {
  return ordered_product(a, b, ctx) + ordered_product(b, a, ctx);
}

ModeSumResult mode_sum(const std::function<complex(int)>& term, double rel_tol, int mode_cutoff,
                       int stall, double abs_floor, bool allow_truncation) {
  ModeSumResult r;
  int quiet = 0;
  for (int g = 1; g <= mode_cutoff; ++g) {
    const complex t = term(g);
    r.value += t;
    r.last_mode = g;
    if (std::abs(t) <= rel_tol * std::abs(r.value) + abs_floor)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= stall) return r;
  }
  if (allow_truncation) {
    r.converged = false;
    return r;
  }
  throw mode_sum_error("mode sum did not converge within cutoff " + std::to_string(mode_cutoff));
}

}  // namespace catprobe
