#pragma once

#include <complex>

/// \file phase_kernels.hpp
/// Stable scalar kernels for the oscillatory time integrals: every closed
/// form in the library reduces to phi1 and ordered_double_exp.

namespace catprobe {

using complex = std::complex<double>;

/// phi1(x) = (e^{ix} - 1)/(ix), the normalized single-exponential integral
/// (int_0^T e^{ift} dt = T * phi1(fT)).  Direct formula for |x| >= 1e-4,
/// truncated power series below; continuous across the switch to ~1e-13
/// relative.
complex phi1(complex x);

/// power_moment(k, x) = int_0^1 u^k e^{ixu} du.  Series for small |x|,
/// upward recurrence otherwise; stable for k <= 12 over the full real line.
complex power_moment(int k, double x);

/// Time-ordered double exponential integral
///   int_0^T dt2 e^{i a t2} int_0^{t2} dt1 e^{i b t1}.
/// Evaluated as (T/(ib)) [phi1((a+b)T) - phi1(aT)] when |bT| is not small,
/// and through power moments of e^{iaT u} otherwise (covers b -> 0, where
/// the value tends to T^2 * phi1'..., and a = b = 0 where it is T^2/2).
complex ordered_double_exp(double a, double b, double t_total);

}  // namespace catprobe
