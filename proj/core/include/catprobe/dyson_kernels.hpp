#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include "catprobe/phase_kernels.hpp"
#include "catprobe/units.hpp"

/// \file dyson_kernels.hpp
/// Closed forms for the single and time-ordered double integrals of the
/// second-order Dyson expansion.
///
/// A kernel names one integrand factor:
///   qubit  (I):  e^{i s (+-Omega_q + w_g) t} sin(k_g x0)/sqrt(g pi)
///   probe  (X):  e^{i s (+-Omega_p + w_g) t} sin(k_g v t)/sqrt(g pi)
/// where s = -1 marks the conjugated kernel.  Conjugation is applied inside
/// the kernel (frequency negation + coefficient conjugation), never to the
/// value of an ordered integral: conj(A o B) keeps the time order and
/// conjugates both integrands, which is a different kernel pair.
///
/// ordered_product(later, earlier) integrates the `later` kernel over t2 and
/// the `earlier` kernel over t1 <= t2, matching the circle-product
/// convention in which the left factor carries the later time.

namespace catprobe {

struct Kernel {
  enum class Family { qubit, probe };
  Family family = Family::qubit;
  int sign = +1;            ///< +-Omega in the exponent
  int mode = 1;             ///< cavity mode index
  bool conjugated = false;

  Kernel conj() const {
    Kernel k = *this;
    k.conjugated = !k.conjugated;
    return k;
  }
};

inline Kernel iplus(int mode) { return {Kernel::Family::qubit, +1, mode, false}; }
inline Kernel iminus(int mode) { return {Kernel::Family::qubit, -1, mode, false}; }
inline Kernel xplus(int mode) { return {Kernel::Family::probe, +1, mode, false}; }
inline Kernel xminus(int mode) { return {Kernel::Family::probe, -1, mode, false}; }

/// Frequencies and spatial factors a kernel expands into: a qubit kernel is
/// one complex exponential, a probe kernel two (the sine split).
struct KernelExpansion {
  int count = 0;
  double freq[2] = {0.0, 0.0};
  complex coeff[2] = {};
};

class KernelContext {
 public:
  KernelContext(const CavityConfig& cavity, const ProbeConfig& probe, const QubitConfig& qubit)
      : cavity_(cavity),
        probe_(probe),
        qubit_(qubit),
        transit_time_(probe.transit_time(cavity)) {}

  double transit_time() const { return transit_time_; }
  const CavityConfig& cavity() const { return cavity_; }
  const ProbeConfig& probe() const { return probe_; }
  const QubitConfig& qubit() const { return qubit_; }

  KernelExpansion expand(const Kernel& k) const;

 private:
  CavityConfig cavity_;
  ProbeConfig probe_;
  QubitConfig qubit_;
  double transit_time_;
};

/// Single time integral of one kernel over [0, T].
complex single_integral(const Kernel& k, const KernelContext& ctx);

/// Time-ordered double integral; `later` at t2, `earlier` at t1 <= t2.
complex ordered_product(const Kernel& later, const Kernel& earlier, const KernelContext& ctx);

/// Symmetrized sum {a, b} = a o b + b o a; equals the product of the two
/// single integrals (simplex decomposition of the square).
complex anticommutator_product(const Kernel& a, const Kernel& b, const KernelContext& ctx);

class mode_sum_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModeSumResult {
  complex value{0.0, 0.0};
  int last_mode = 0;     ///< highest mode index evaluated
  bool converged = true;
};

/// Sums term(g) for g = 1, 2, ... until `stall` consecutive terms each fall
/// below rel_tol * |partial sum| + abs_floor, or mode_cutoff is reached.
/// Reaching the cutoff without the tolerance criterion throws
/// mode_sum_error unless allow_truncation is set (used when the cutoff is
/// deliberately matched to an oracle's retained modes); the truncated
/// result then carries converged = false.  The absolute floor matters for
/// sums that are analytically zero (fine-tuned cancellations leave rounding
/// noise that never shrinks relative to the partial sum).
ModeSumResult mode_sum(const std::function<complex(int)>& term, double rel_tol, int mode_cutoff,
                       int stall = 20, double abs_floor = 0.0, bool allow_truncation = false);

/// Absolute floor matched to the kernel scale: every single integral is
/// bounded by T/sqrt(g pi) and every ordered product by T^2/2, so terms
/// below 1e-24 T^2 sit far under rounding noise of any O(1) result.
inline double kernel_noise_floor(const KernelContext& ctx) {
  const double t = ctx.transit_time();
  return 1e-24 * t * t;
}

}  // namespace catprobe
