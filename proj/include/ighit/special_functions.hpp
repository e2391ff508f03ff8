#pragma once

namespace ighit {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrtPi = 1.772453850905516027298167483341145182;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

// Error functions after W. J. Cody, "Rational Chebyshev approximations for
// the error function", Math. Comp. 23 (1969), as distributed in netlib
// specfun/erf. Relative error is near machine precision on the real line.
double erf(double z);
double erfc(double z);
/// Scaled complement e^{z^2} erfc(z); overflows to +inf only for z < -26.6.
double erfcx(double z);

/// Standard normal distribution function.
double normal_cdf(double z);
/// log Phi(z), accurate far into the lower tail.
double log_normal_cdf(double z);

/// Upper incomplete gamma Gamma(a, x) for x > 0 and a > -1, a != 0.
double upper_incomplete_gamma(double a, double x);
/// Regularized Q(a, x) = Gamma(a, x) / Gamma(a) for a > 0, x >= 0.
double regularized_gamma_q(double a, double x);

}  // namespace ighit
