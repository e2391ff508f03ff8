#include "ighit/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ighit/errors.hpp"
#include "ighit/special_functions.hpp"

namespace ighit {

std::vector<double> stehfest_weights(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("Stehfest weights need an even term count");
  const int half = n / 2;
  auto fact = [](int k) {
    long double r = 1.0L;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
  };
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    long double sum = 0.0L;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      sum += std::pow(static_cast<long double>(j), half) * fact(2 * j) /
             (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
    }
    const int sign = ((k + half) % 2 == 0) ? 1 : -1;
    v[static_cast<std::size_t>(k)] = static_cast<double>(sign * sum);
  }
  return v;
}

double gaver_stehfest(const std::function<double(double)>& F, double t, int terms) {
  if (!(t > 0.0)) throw DomainError("inverse Laplace transform needs t > 0");
  const std::vector<double> v = stehfest_weights(terms);
  const double ln2_t = std::log(2.0) / t;
  long double sum = 0.0L;
  for (int k = 1; k <= terms; ++k) {
    sum += static_cast<long double>(v[static_cast<std::size_t>(k)]) * F(k * ln2_t);
  }
  return static_cast<double>(sum) * ln2_t;
}

double fixed_talbot(const std::function<cplx(cplx)>& F, double t, int terms) {
  if (!(t > 0.0)) throw DomainError("inverse Laplace transform needs t > 0");
  // Abate & Valko fixed Talbot contour s(theta) = r theta (cot theta + i).
  const double r = 2.0 * terms / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * F(cplx(r, 0.0)).real();
  for (int k = 1; k < terms; ++k) {
    const double theta = k * kPi / terms;
    const double cot = 1.0 / std::tan(theta);
    const cplx s(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    sum += (std::exp(t * s) * F(s) * cplx(1.0, sigma)).real();
  }
  return r / terms * sum;
}

double invert_laplace(const LaplaceFunction& F, double t, const NumericSpec& spec) {
  spec.validate();
  double primary = 0.0;
  double check = 0.0;
  int check_terms = 0;
  if (spec.ilt_method == IltMethod::gaver_stehfest) {
    if (!F.real) throw DomainError("Gaver-Stehfest needs a real-valued transform");
    check_terms = spec.ilt_terms - 2;
    primary = gaver_stehfest(F.real, t, spec.ilt_terms);
    check = gaver_stehfest(F.real, t, check_terms);
  } else {
    if (!F.complex) throw DomainError("fixed Talbot needs a complex-valued transform");
    check_terms = std::max(12, spec.ilt_terms * 3 / 4);
    primary = fixed_talbot(F.complex, t, spec.ilt_terms);
    check = fixed_talbot(F.complex, t, check_terms);
  }
  const double allowed = 100.0 * std::max(spec.ilt_tol * std::fabs(primary), spec.abs_tol);
  if (!std::isfinite(primary) || std::fabs(primary - check) > allowed) {
    std::ostringstream msg;
    msg << to_string(spec.ilt_method) << " inversion at t = " << t << " is unstable: " << spec.ilt_terms
        << " terms give " << primary << ", " << check_terms << " terms give " << check;
    throw NumericalInstability(msg.str());
  }
  return primary;
}

}  // namespace ighit
