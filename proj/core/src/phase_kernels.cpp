#include "catprobe/phase_kernels.hpp"

#include <cmath>

namespace catprobe {

namespace {

constexpr complex imag_unit{0.0, 1.0};

// Below this the direct (e^{ix}-1)/(ix) loses digits to cancellation faster
// than the truncated series loses them to truncation.
constexpr double phi1_series_threshold = 1e-4;

// Switch ordered_double_exp to the power-moment series once |bT| is small
// enough that the phi1 difference quotient would cancel.  The direct branch
// keeps a relative error of about 2e-16/|bT|, so 1e-2 bounds it by ~2e-14.
constexpr double double_exp_series_threshold = 1e-2;

}  // namespace

complex phi1(complex x) {
  if (std::abs(x) >= phi1_series_threshold) {
    complex ix = imag_unit * x;
    return (std::exp(ix) - 1.0) / ix;
  }
  // sum_{n>=0} (ix)^n / (n+1)!
  complex ix = imag_unit * x;
  complex term{1.0, 0.0};
  complex sum{1.0, 0.0};
  for (int n = 1; n <= 9; ++n) {
    term *= ix / static_cast<double>(n + 1);
    sum += term;
  }
  return sum;
}

complex power_moment(int k, double x) {
  double ax = std::abs(x);
  if (ax <= 4.0) {
    // sum_{j>=0} (ix)^j / (j! (k+j+1))
    complex ix{0.0, x};
    complex pow{1.0, 0.0};
    complex sum = pow / static_cast<double>(k + 1);
    for (int j = 1; j <= 40; ++j) {
      pow *= ix / static_cast<double>(j);
      complex term = pow / static_cast<double>(k + j + 1);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  // Upward recurrence mu_k = (e^{ix} - k mu_{k-1}) / (ix); the per-step
  // error gain k/|x| stays <= k/4, and the product over steps stays below
  // one for k <= 12 once |x| > 4.
  complex eix = std::exp(complex{0.0, x});
  complex ix{0.0, x};
  complex mu = phi1(complex{x, 0.0});
  for (int j = 1; j <= k; ++j) mu = (eix - static_cast<double>(j) * mu) / ix;
  return mu;
}

complex ordered_double_exp(double a, double b, double t_total) {
  const double x = a * t_total;
  const double y = b * t_total;
  if (std::abs(y) >= double_exp_series_threshold) {
    complex ib{0.0, b};
    return (t_total / ib) * (phi1(complex{x + y, 0.0}) - phi1(complex{x, 0.0}));
  }
  // int_0^T e^{iat} t phi1(bt) dt = T^2 sum_n (ibT)^n/(n+1)! mu_{n+1}(aT)
  complex iy{0.0, y};
  complex factor{1.0, 0.0};
  complex sum{0.0, 0.0};
  for (int n = 0; n <= 8; ++n) {
    if (n > 0) factor *= iy / static_cast<double>(n + 1);
    sum += factor * power_moment(n + 1, x);
  }
  return t_total * t_total * sum;
}

}  // namespace catprobe
