#include "ighit/special_functions.hpp"

#include <cmath>
#include <limits>

#include "ighit/errors.hpp"

namespace ighit {
namespace {

enum class ErfKind { erf, erfc, erfcx };

// exp(-y*y) with y split into a 1/16-grid part and a remainder so the
// exponential keeps full relative accuracy for large y.
double exp_neg_square(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

double calerf(double x, ErfKind kind) {
  static constexpr double a[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                                  3209.37758913846947, .185777706184603153};
  static constexpr double b[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                  2844.23683343917062};
  static constexpr double c[9] = {.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                  298.635138197400131, 881.95222124176909,  1712.04761263407058,
                                  2051.07837782607147, 1230.33935479799725, 2.15311535474403846e-8};
  static constexpr double d[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                  1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                  3439.36767414372164, 1230.33935480374942};
  static constexpr double p[6] = {.305326634961232344, .360344899949804439, .125781726111229246,
                                  .0160837851487422766, 6.58749161529837803e-4, .0163153871373020978};
  static constexpr double q[5] = {2.56852019228982242, 1.87295284992346047, .527905102951428412,
                                  .0605183413124413191, .00233520497626869185};

  constexpr double sqrpi = 0.56418958354775628695;  // 1/sqrt(pi)
  constexpr double thresh = 0.46875;
  constexpr double xneg = -26.628;
  constexpr double xsmall = 1.11e-16;
  constexpr double xbig = 26.543;
  constexpr double xhuge = 6.71e7;
  constexpr double xmax = 2.53e307;

  const double y = std::fabs(x);
  double result = 0.0;

  if (y <= thresh) {
    const double ysq = y > xsmall ? y * y : 0.0;
    double xnum = a[4] * ysq;
    double xden = ysq;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + a[i]) * ysq;
      xden = (xden + b[i]) * ysq;
    }
    result = x * (xnum + a[3]) / (xden + b[3]);
    if (kind != ErfKind::erf) result = 1.0 - result;
    if (kind == ErfKind::erfcx) result *= std::exp(ysq);
    return result;
  }

  if (y <= 4.0) {
    double xnum = c[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + c[i]) * y;
      xden = (xden + d[i]) * y;
    }
    result = (xnum + c[7]) / (xden + d[7]);
    if (kind != ErfKind::erfcx) result *= exp_neg_square(y);
  } else {
    bool done = false;
    if (y >= xbig) {
      if (kind != ErfKind::erfcx || y >= xmax) {
        result = 0.0;
        done = true;
      } else if (y >= xhuge) {
        result = sqrpi / y;
        done = true;
      }
    }
    if (!done) {
      const double ysq = 1.0 / (y * y);
      double xnum = p[5] * ysq;
      double xden = ysq;
      for (int i = 0; i < 4; ++i) {
        xnum = (xnum + p[i]) * ysq;
        xden = (xden + q[i]) * ysq;
      }
      result = ysq * (xnum + p[4]) / (xden + q[4]);
      result = (sqrpi - result) / y;
      if (kind != ErfKind::erfcx) result *= exp_neg_square(y);
    }
  }

  switch (kind) {
    case ErfKind::erf:
      result = (0.5 - result) + 0.5;
      return x < 0.0 ? -result : result;
    case ErfKind::erfc:
      return x < 0.0 ? 2.0 - result : result;
    case ErfKind::erfcx:
      if (x < 0.0) {
        if (x < xneg) return std::numeric_limits<double>::infinity();
        const double ysq = std::trunc(x * 16.0) / 16.0;
        const double del = (x - ysq) * (x + ysq);
        const double e = std::exp(ysq * ysq) * std::exp(del);
        result = e + e - result;
      }
      return result;
  }
  return result;
}

}  // namespace

double erf(double z) { return calerf(z, ErfKind::erf); }
double erfc(double z) { return calerf(z, ErfKind::erfc); }
double erfcx(double z) { return calerf(z, ErfKind::erfcx); }

double normal_cdf(double z) { return 0.5 * erfc(-z / kSqrt2); }

double log_normal_cdf(double z) {
  if (z > -5.0) return std::log(normal_cdf(z));
  // Phi(z) = erfcx(-z/sqrt2) e^{-z^2/2} / 2
  return std::log(0.5 * erfcx(-z / kSqrt2)) - 0.5 * z * z;
}

namespace {

// Series for the regularized lower gamma P(a, x), x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < 1000; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw DomainError("regularized_gamma_q needs a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double upper_incomplete_gamma(double a, double x) {
  if (!(x > 0.0)) throw DomainError("upper_incomplete_gamma needs x > 0");
  if (a > 0.0) return std::tgamma(a) * regularized_gamma_q(a, x);
  if (a > -1.0 && a < 0.0) {
    // Gamma(a+1, x) = a Gamma(a, x) + x^a e^{-x}
    return (upper_incomplete_gamma(a + 1.0, x) - std::exp(a * std::log(x) - x)) / a;
  }
  throw DomainError("upper_incomplete_gamma supports a > -1, a != 0");
}

}  // namespace ighit
