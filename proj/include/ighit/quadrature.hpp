#pragma once

#include <functional>

#include "ighit/numeric_spec.hpp"

namespace ighit {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  /// Tolerance was below the rounding floor of the integrand; value is the
  /// best attainable in double precision.
  bool roundoff_limited = false;
};

/// Globally adaptive Gauss-Kronrod (10/21) on a finite interval [a, b].
/// Throws NonConvergence when spec.max_subdivisions intervals do not reach
/// max(abs_tol, rel_tol |value|).
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, const NumericSpec& spec);

inline double integrate(const Integrand& f, double a, double b, const NumericSpec& spec) {
  return integrate_adaptive(f, a, b, spec).value;
}

/// Integral over [lower, inf). Panels of width scale, 2 scale, 4 scale, ...
/// are added until two consecutive panels fall below truncation_eps times the
/// running total. `scale` should be the integrand's characteristic length.
QuadratureResult integrate_semi_infinite(const Integrand& f, const NumericSpec& spec,
                                         double lower = 0.0, double scale = 1.0);

/// Sum of adaptive integrals over the cells [k w, (k+1) w] that cover
/// [0, upper]. Used for integrands with a sin/cos factor of half-period w, so
/// each cell holds one sign-definite lobe.
QuadratureResult integrate_cells(const Integrand& f, double cell_width, double upper,
                                 const NumericSpec& spec);

}  // namespace ighit
