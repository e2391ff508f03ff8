#pragma once

// Reference values computed independently of the library: std::erfc from the
// C library plus elementary closed forms.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// e^{z^2} erfc(z) for z >= 0, continued-fraction tail past z = 25.
inline double erfcx(double z) {
  if (z < 25.0) return std::exp(z * z) * std::erfc(z);
  double f = 0.0;
  for (int k = 60; k >= 1; --k) f = (k / 2.0) / (z + f);
  return 1.0 / (std::sqrt(pi) * (z + f));
}

/// Hitting-time density by the erfcx closed form.
inline double hitting_density(double x, double t, double delta, double gamma) {
  const double d = delta * x - gamma * t;
  const double bracket =
      std::sqrt(2.0 / (pi * t)) - gamma * erfcx((delta * x + gamma * t) / std::sqrt(2.0 * t));
  return delta * std::exp(-d * d / (2.0 * t)) * bracket;
}

inline double half_normal_density(double x, double t) {
  return std::sqrt(2.0 / (pi * t)) * std::exp(-x * x / (2.0 * t));
}

/// IG(a, b) density: first passage of B(s) + b s over level a.
inline double ig_density(double u, double a, double b) {
  if (u <= 0.0) return 0.0;
  const double d = a - b * u;
  return a / std::sqrt(2.0 * pi * u * u * u) * std::exp(-d * d / (2.0 * u));
}

/// IG(a, b) distribution function via normal CDFs.
inline double ig_distribution(double u, double a, double b) {
  if (u <= 0.0) return 0.0;
  const auto phi = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  const double s = std::sqrt(u);
  const double first = phi((b * u - a) / s);
  const double log_second = 2.0 * a * b + std::log(phi(-(b * u + a) / s));
  return first + std::exp(log_second);
}

/// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
