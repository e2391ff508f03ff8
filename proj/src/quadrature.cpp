#include "ighit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "ighit/errors.hpp"

namespace ighit {
namespace {

// QUADPACK qk21 abscissae and weights. xgk[1], xgk[3], ... are the 10-point
// Gauss nodes; the others are the Kronrod extension.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUflow = std::numeric_limits<double>::min();

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool at_floor = false;
};

double checked(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw NonConvergence("integrand is not finite at x = " + std::to_string(x));
  }
  return v;
}

Segment gauss_kronrod21(const Integrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::fabs(half);

  std::array<double, 10> fv1{};
  std::array<double, 10> fv2{};
  const double fc = checked(f, centre);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::fabs(resk);

  for (int j = 0; j < 5; ++j) {
    const int k = 2 * j + 1;
    const double dx = half * kXgk[k];
    const double f1 = checked(f, centre - dx);
    const double f2 = checked(f, centre + dx);
    fv1[k] = f1;
    fv2[k] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[k] * (f1 + f2);
    resabs += kWgk[k] * (std::fabs(f1) + std::fabs(f2));
  }
  for (int j = 0; j < 5; ++j) {
    const int k = 2 * j;
    const double dx = half * kXgk[k];
    const double f1 = checked(f, centre - dx);
    const double f2 = checked(f, centre + dx);
    fv1[k] = f1;
    fv2[k] = f2;
    resk += kWgk[k] * (f1 + f2);
    resabs += kWgk[k] * (std::fabs(f1) + std::fabs(f2));
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - reskh);
  for (int k = 0; k < 10; ++k) {
    resasc += kWgk[k] * (std::fabs(fv1[k] - reskh) + std::fabs(fv2[k] - reskh));
  }

  Segment s;
  s.a = a;
  s.b = b;
  s.value = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kUflow / (50.0 * kEps)) {
    const double floor = 50.0 * kEps * resabs;
    if (err <= floor) {
      err = floor;
      s.at_floor = true;
    }
  }
  s.error = err;
  return s;
}

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const { return l.error < r.error; }
};

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, const NumericSpec& spec) {
  QuadratureResult out;
  if (a == b) return out;
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_adaptive needs finite limits");
  }

  std::priority_queue<Segment, std::vector<Segment>, ByError> active;
  double frozen_value = 0.0;
  double frozen_error = 0.0;

  Segment first = gauss_kronrod21(f, a, b);
  out.evaluations = 21;
  out.intervals = 1;
  double total_value = first.value;
  double total_error = first.error;
  active.push(first);

  while (true) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_value));
    if (total_error <= target) break;
    if (active.empty()) {
      out.roundoff_limited = true;
      break;
    }
    Segment worst = active.top();
    active.pop();

    const double mid = 0.5 * (worst.a + worst.b);
    const bool too_narrow =
        std::fabs(worst.b - worst.a) <= 1e3 * kEps * std::max(std::fabs(worst.a), std::fabs(worst.b));
    if (worst.at_floor || too_narrow || mid <= worst.a || mid >= worst.b) {
      frozen_value += worst.value;
      frozen_error += worst.error;
      continue;
    }
    if (out.intervals >= spec.max_subdivisions) {
      throw NonConvergence("adaptive quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                           "] did not converge in " + std::to_string(spec.max_subdivisions) +
                           " intervals (error estimate " + std::to_string(total_error) + ")");
    }
    const Segment left = gauss_kronrod21(f, worst.a, mid);
    const Segment right = gauss_kronrod21(f, mid, worst.b);
    out.evaluations += 42;
    ++out.intervals;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
  }

  // Re-sum from the pieces to shed the drift of incremental updates.
  double value = frozen_value;
  double error = frozen_error;
  while (!active.empty()) {
    value += active.top().value;
    error += active.top().error;
    active.pop();
  }
  out.value = value;
  out.error = error;
  return out;
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const NumericSpec& spec, double lower,
                                         double scale) {
  if (!(scale > 0.0)) throw DomainError("integrate_semi_infinite needs scale > 0");
  constexpr int max_panels = 900;
  QuadratureResult out;
  double left = lower;
  double width = scale;
  int quiet = 0;
  for (int panel = 0; panel < max_panels; ++panel) {
    const double right = left + width;
    const QuadratureResult piece = integrate_adaptive(f, left, right, spec);
    out.value += piece.value;
    out.error += piece.error;
    out.evaluations += piece.evaluations;
    out.intervals += piece.intervals;
    out.roundoff_limited = out.roundoff_limited || piece.roundoff_limited;

    const bool negligible = std::fabs(piece.value) <= spec.truncation_eps * std::fabs(out.value);
    const bool all_zero = out.value == 0.0 && piece.value == 0.0 && panel >= 64;
    quiet = negligible ? quiet + 1 : 0;
    if (quiet >= 2 || all_zero) return out;
    left = right;
    width *= 2.0;
  }
  throw NonConvergence("semi-infinite integral: tail did not become negligible");
}

QuadratureResult integrate_cells(const Integrand& f, double cell_width, double upper,
                                 const NumericSpec& spec) {
  if (!(cell_width > 0.0)) throw DomainError("integrate_cells needs cell_width > 0");
  QuadratureResult out;
  if (!(upper > 0.0)) return out;
  const auto cells = static_cast<long long>(std::ceil(upper / cell_width));
  if (cells > 10'000'000) throw NonConvergence("oscillatory integral needs too many cells");
  NumericSpec cell_spec = spec;
  // The tolerance applies to the sum, so individual lobes get a share.
  cell_spec.abs_tol = spec.abs_tol / std::sqrt(static_cast<double>(std::max<long long>(cells, 1)));
  for (long long k = 0; k < cells; ++k) {
    const double lo = static_cast<double>(k) * cell_width;
    const double hi = std::min(upper, lo + cell_width);
    const QuadratureResult piece = integrate_adaptive(f, lo, hi, cell_spec);
    out.value += piece.value;
    out.error += piece.error;
    out.evaluations += piece.evaluations;
    out.intervals += piece.intervals;
    out.roundoff_limited = out.roundoff_limited || piece.roundoff_limited;
  }
  return out;
}

}  // namespace ighit
