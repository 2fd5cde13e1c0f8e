#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

/// \file quadrature.hpp
/// Brute-force validators for the closed-form time integrals: panelled
/// Gauss-Legendre quadrature for single integrals and for time-ordered
/// double integrals over the triangle 0 <= t1 <= t2 <= T.  Panel counts
/// double until two consecutive refinements agree, so the result is
/// independent of the closed forms it checks.

namespace catprobe {

using complex_fn = std::function<std::complex<double>(double)>;
using complex_fn2 = std::function<std::complex<double>(double, double)>;

class quadrature_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Integrates f over [0, t_total].  `max_abs_freq` sizes the initial panel
/// grid against the fastest oscillation; tol is relative (with a small
/// absolute floor).  Throws quadrature_error if the panel budget runs out.
QuadResult integrate_single(const complex_fn& f, double t_total, double max_abs_freq, double tol);

/// Integrates f2(t2) * f1(t1) over the ordered triangle t1 <= t2 <= T.
QuadResult integrate_ordered(const complex_fn& f2, const complex_fn& f1, double t_total,
                             double max_abs_freq, double tol);

}  // namespace catprobe
