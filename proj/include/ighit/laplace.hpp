#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ighit/numeric_spec.hpp"

namespace ighit {

using cplx = std::complex<double>;

/// A transform F(s) = int_0^inf e^{-st} f(t) dt. Gaver-Stehfest probes the
/// real branch only; fixed Talbot needs the complex branch.
struct LaplaceFunction {
  std::function<double(double)> real;
  std::function<cplx(cplx)> complex;
  double s_min = 0.0;

  double operator()(double s) const { return real(s); }
};

/// Stehfest weights V_1..V_n (index 0 unused) for even n.
std::vector<double> stehfest_weights(int n);

double gaver_stehfest(const std::function<double(double)>& F, double t, int terms);
double fixed_talbot(const std::function<cplx(cplx)>& F, double t, int terms);

/// f(t) from F using spec.ilt_method with spec.ilt_terms terms. A second
/// evaluation with fewer terms guards against ill-conditioning; if the two
/// disagree by more than 100 x max(ilt_tol |f|, abs_tol) this throws
/// NumericalInstability.
double invert_laplace(const LaplaceFunction& F, double t, const NumericSpec& spec);

}  // namespace ighit
