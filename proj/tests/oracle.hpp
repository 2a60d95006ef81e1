// High-precision reference for the standard normal CDF, kept independent of
// the library implementation on purpose: it evaluates the error function from
// first principles (Maclaurin series for small arguments, a Lentz-style
// continued fraction for the tail) in long double arithmetic, and is itself
// checked against published table values before anything else is tested
// against it.
#pragma once

#include <cmath>

namespace oracle {

inline constexpr long double kTwoOverSqrtPi =
    1.128379167095512573896158903121545172L;
inline constexpr long double kSqrtPi =
    1.772453850905516027298167483341145183L;

// erf(x) by the Maclaurin series; used for |x| <= 2 where the alternating
// terms shrink fast enough for full long double accuracy.
inline long double erf_series(long double x) {
  long double term = x;
  long double sum = x;
  const long double x2 = x * x;
  for (int n = 1; n < 300; ++n) {
    term *= -x2 / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) <= 1e-25L * std::fabs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// erfc(x) for x >= 2 by the classical continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// with partial numerators n/2, evaluated by the modified Lentz algorithm.
inline long double erfc_cf(long double x) {
  const long double tiny = 1e-300L;
  long double f = x;
  long double c = f;
  long double d = 0.0L;
  for (int n = 1; n < 400; ++n) {
    const long double a = n / 2.0L;
    d = x + a * d;
    if (d == 0.0L) d = tiny;
    c = x + a / c;
    if (c == 0.0L) c = tiny;
    d = 1.0L / d;
    const long double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0L) < 1e-22L) break;
  }
  return std::exp(-x * x) / (kSqrtPi * f);
}

inline long double erfc_ref(long double x) {
  if (x >= 2.0L) return erfc_cf(x);
  if (x <= -2.0L) return 2.0L - erfc_cf(-x);
  return 1.0L - erf_series(x);
}

// Standard normal CDF, Phi(x) = erfc(-x/sqrt(2))/2.
inline long double normal_cdf_ref(long double x) {
  const long double inv_sqrt2 = 0.707106781186547524400844362104849039L;
  return 0.5L * erfc_ref(-x * inv_sqrt2);
}

}  // namespace oracle
