#include "ighit/inverse_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ighit/errors.hpp"
#include "ighit/fit.hpp"
#include "ighit/laplace.hpp"
#include "ighit/quadrature.hpp"
#include "ighit/special_functions.hpp"

namespace ighit {
namespace {

void require_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time t must be finite and > 0");
}

// The real-axis lobes cancel down to roughly prefactor * e^{-k^2 / 4t}, so
// relative accuracy is lost once either factor passes 1e3 in log terms.
constexpr double kMaxRealAxisLogPrefactor = 6.907755278982137;  // ln 1e3
constexpr double kMaxRealAxisCells = 4000.0;

double real_axis_integral(double x, double t, const IGParams& p, const NumericSpec& spec) {
  const double g = p.gamma;
  const double k = p.delta * kSqrt2 * x;
  const double omega_max = std::sqrt(-std::log(spec.truncation_eps) / t);
  const double half_period = kPi / k;
  const Integrand f = [&](double w) {
    const double kw = k * w;
    return 2.0 * w * std::exp(-t * w * w) / (w * w + 0.5 * g * g) *
           (g * std::sin(kw) + kSqrt2 * w * std::cos(kw));
  };
  return integrate_cells(f, std::min(half_period, omega_max), omega_max, spec).value;
}

// After omega = u + i sigma with sigma = k / (2t) the Gaussian factor is
// centred and the integrand (u^2 + sigma b) / (u^2 + b^2) is positive.
double steepest_descent_integral(double x, double t, const IGParams& p, const NumericSpec& spec) {
  const double k = p.delta * kSqrt2 * x;
  const double sigma = k / (2.0 * t);
  const double b = sigma + p.gamma / kSqrt2;
  const Integrand f = [&](double u) {
    const double u2 = u * u;
    return std::exp(-t * u2) * (u2 + sigma * b) / (u2 + b * b);
  };
  const double scale = 1.0 / std::sqrt(t);
  return 2.0 * kSqrt2 * integrate_semi_infinite(f, spec, 0.0, scale).value;
}

double literal_correction(double t, const IGParams& p, Prefactor mode) {
  if (mode == Prefactor::corrected) return 1.0;
  return std::exp(0.5 * (t - 1.0) * p.gamma * p.gamma);
}

double marginal_mode_guess(const SubordinatorModel& model, double x) {
  if (const auto* ig = std::get_if<IGParams>(&model.kind())) {
    const double a = ig->delta * x;
    const double b = ig->gamma;
    if (b == 0.0) return a * a / 3.0;
    const double mean = a / b;
    const double r = 1.5 * mean / (a * a);
    return mean * (std::sqrt(1.0 + r * r) - r);
  }
  const double beta = model.levy_tail_exponent();
  return 0.2 * std::pow(x, 1.0 / beta);
}

}  // namespace

double hit_pdf_integral(double x, double t, const HittingDensityEval& eval) {
  require_time(t);
  const IGParams& p = eval.params;
  p.validate();
  if (x < 0.0 || !std::isfinite(x)) throw DomainError("hit_pdf_integral needs finite x >= 0");
  if (x == 0.0) {
    const double h0 = hit_boundary_value(t, p);
    return h0 * literal_correction(t, p, eval.prefactor);
  }

  DensityRoute route = eval.route;
  const double log_prefactor = p.delta * p.gamma * x - 0.5 * t * p.gamma * p.gamma;
  if (route == DensityRoute::automatic) {
    const double omega_max = std::sqrt(-std::log(eval.spec.truncation_eps) / t);
    const double cells = omega_max * p.delta * kSqrt2 * x / kPi;
    const double k = p.delta * kSqrt2 * x;
    const double damping = k * k / (4.0 * t);
    route = (log_prefactor > kMaxRealAxisLogPrefactor || damping > kMaxRealAxisLogPrefactor ||
             cells > kMaxRealAxisCells)
                ? DensityRoute::steepest_descent
                : DensityRoute::real_axis;
  }

  double h = 0.0;
  if (route == DensityRoute::real_axis) {
    h = p.delta / kPi * std::exp(log_prefactor) * real_axis_integral(x, t, p, eval.spec);
  } else {
    const double k = p.delta * kSqrt2 * x;
    h = p.delta / kPi * std::exp(log_prefactor - k * k / (4.0 * t)) *
        steepest_descent_integral(x, t, p, eval.spec);
  }
  return h * literal_correction(t, p, eval.prefactor);
}

double hit_pdf_convolution(double x, double t, const SubordinatorModel& model, const NumericSpec& spec) {
  require_time(t);
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hit_pdf_convolution needs x > 0");
  const double e = model.levy_tail_exponent();
  const double power = 1.0 / (1.0 - e);
  const double split = std::min(0.5 * t, marginal_mode_guess(model, x));

  const Integrand head = [&](double y) { return model.levy_tail(t - y) * model.marginal_pdf(y, x); };
  // y = t - v^power removes the (t - y)^{-e} endpoint singularity of the tail.
  const Integrand tail = [&](double v) {
    const double r = std::pow(v, power);
    const double y = t - r;
    if (!(y > 0.0)) return 0.0;
    return model.levy_tail(r) * power * std::pow(v, power - 1.0) * model.marginal_pdf(y, x);
  };
  double total = 0.0;
  if (split > 0.0) total += integrate(head, 0.0, split, spec);
  total += integrate(tail, 0.0, std::pow(t - split, 1.0 - e), spec);
  return total;
}

double hit_survival(double x, double t, const IGParams& p) {
  require_time(t);
  if (x <= 0.0) return 1.0;
  return ig_cdf(t, IGMarginal{p.delta * x, p.gamma});
}

double hit_cdf(double x, double t, const IGParams& p) {
  require_time(t);
  if (x <= 0.0) return 0.0;
  return 1.0 - ig_cdf(t, IGMarginal{p.delta * x, p.gamma});
}

double hit_log_survival(double x, double t, const IGParams& p) {
  require_time(t);
  if (x <= 0.0) return 0.0;
  return ig_log_cdf(t, IGMarginal{p.delta * x, p.gamma});
}

double hit_lt_time(double x, double s, const IGParams& p) {
  if (!(s > 0.0)) throw DomainError("hit_lt_time needs s > 0");
  const double psi = ig_psi(s, p);
  return psi / s * std::exp(-x * psi);
}

std::complex<double> hit_lt_time(double x, std::complex<double> s, const IGParams& p) {
  const std::complex<double> psi = ig_psi(s, p);
  return psi / s * std::exp(-x * psi);
}

double hit_llt(double u, double s, const IGParams& p) {
  if (!(s > 0.0)) throw DomainError("hit_llt needs s > 0");
  const double psi = ig_psi(s, p);
  if (!(u + psi > 0.0)) throw DomainError("hit_llt needs u > -Psi(s)");
  return psi / (s * (u + psi));
}

double hit_lt_space(double mu, double t, const IGParams& p, const NumericSpec& spec) {
  require_time(t);
  p.validate();
  const double g = p.gamma;
  const double d = p.delta;
  if (g == 0.0) {
    if (mu < 0.0) throw DomainError("hit_lt_space needs mu >= 0 when gamma = 0");
    return erfcx(mu * std::sqrt(t) / (d * kSqrt2));
  }
  if (!(mu > d * g)) throw DomainError("hit_lt_space needs mu > delta * gamma");
  const double c = mu - d * g;
  // y = omega^2 in the y-integral; the integrand is positive.
  const Integrand f = [&](double w) {
    const double w2 = w * w;
    return std::exp(-t * w2) * 2.0 * kSqrt2 * w2 / ((w2 + 0.5 * g * g) * (c * c + 2.0 * d * d * w2));
  };
  const double integral = integrate_semi_infinite(f, spec, 0.0, 1.0 / std::sqrt(t)).value;
  return d * mu / kPi * std::exp(-0.5 * t * g * g) * integral;
}

double hit_mean(double t, const IGParams& p) {
  require_time(t);
  p.validate();
  const double d = p.delta;
  const double g = p.gamma;
  if (g == 0.0) return std::sqrt(2.0 * t / kPi) / d;
  const double z = g * std::sqrt(0.5 * t);
  const double ez = erf(z);
  return std::sqrt(t / (2.0 * kPi)) * std::exp(-z * z) / d + ez / (2.0 * d * g) + g * t / (2.0 * d) * (1.0 + ez);
}

double hit_second_moment(double t, const IGParams& p) {
  require_time(t);
  p.validate();
  const double d = p.delta;
  const double g = p.gamma;
  // Below this the bracketed terms cancel to O(g^2) and the driftless value
  // is exact to the shown order.
  if (g * std::sqrt(t) < 1e-6) return t / (d * d);
  const double g2 = g * g;
  const double z = g * std::sqrt(0.5 * t);
  const double bracket = std::exp(-z * z) * (g * std::sqrt(2.0 * t) + g2 * g * kSqrt2 * std::pow(t, 1.5)) +
                         kSqrtPi * (2.0 * g2 * t + g2 * g2 * t * t - 1.0) * erf(z);
  return g2 * t * t / (2.0 * d * d) + t / (d * d) + bracket / (2.0 * d * d * g2 * kSqrtPi);
}

double hit_second_moment_printed(double t, const IGParams& p) { return 2.0 * hit_second_moment(t, p); }

namespace {

double invert_moment_transform(double numerator, double q, double t, const IGParams& p,
                               const NumericSpec& spec) {
  LaplaceFunction F;
  F.real = [&](double s) { return numerator / (s * std::pow(ig_psi(s, p), q)); };
  F.complex = [&](cplx s) { return numerator / (s * std::pow(ig_psi(s, p), q)); };
  return invert_laplace(F, t, spec);
}

}  // namespace

double hit_moment(double q, double t, const IGParams& p, const NumericSpec& spec) {
  require_time(t);
  p.validate();
  if (!(q > 0.0)) throw DomainError("moment order q must be > 0");
  return invert_moment_transform(std::tgamma(1.0 + q), q, t, p, spec);
}

double hit_moment_printed_numerator(double q, double t, const IGParams& p, const NumericSpec& spec) {
  require_time(t);
  p.validate();
  if (!(q > 0.0)) throw DomainError("moment order q must be > 0");
  return invert_moment_transform(q * std::tgamma(1.0 + q), q, t, p, spec);
}

double hit_variance(double t, const IGParams& p) {
  const double m1 = hit_mean(t, p);
  return hit_second_moment(t, p) - m1 * m1;
}

double hit_mean_asymptote(double t, const IGParams& p) {
  require_time(t);
  p.validate();
  if (p.gamma > 0.0 && p.gamma * p.gamma * t > 1.0) return p.gamma * t / p.delta;
  return std::sqrt(2.0 * t / kPi) / p.delta;
}

VarianceLaw fit_variance_law(const IGParams& p, const std::vector<double>& times) {
  if (times.size() < 2) throw DomainError("fit_variance_law needs at least two times");
  std::vector<double> ones(times.size(), 1.0);
  std::vector<double> logt;
  std::vector<double> logv;
  for (double t : times) {
    logt.push_back(std::log(t));
    logv.push_back(std::log(hit_variance(t, p)));
  }
  const auto c = least_squares({ones, logt}, logv);
  return VarianceLaw{std::exp(c[0]), c[1]};
}

double hit_boundary_value(double t, const IGParams& p) {
  require_time(t);
  const double g = p.gamma;
  return p.delta * std::exp(-0.5 * g * g * t) * (std::sqrt(2.0 / (kPi * t)) - g * erfcx(g * std::sqrt(0.5 * t)));
}

double hit_boundary_slope(double t, const IGParams& p) {
  return 2.0 * p.delta * p.gamma * hit_boundary_value(t, p);
}

double hit_boundary_value_printed(double t, const IGParams& p) {
  require_time(t);
  const double g = p.gamma;
  return p.delta * std::exp(-0.5 * g * g) *
         (std::sqrt(2.0 / (kPi * t)) - g * std::exp(0.5 * g * g * t) * erfc(g * std::sqrt(0.5 * t)));
}

namespace {

void finish_tail_report(TailBoundReport& r, const std::vector<double>& log_bound, bool linear_term) {
  const std::size_t n = r.x_grid.size();
  std::vector<double> power_col;
  std::vector<double> log_col;
  std::vector<double> ones(n, 1.0);
  std::vector<double> target;
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = r.x_grid[i];
    r.survival.push_back(std::exp(r.log_survival[i]));
    r.bound_values.push_back(std::exp(log_bound[i]));
    r.ratio.push_back(std::exp(r.log_survival[i] - log_bound[i]));
    finite = finite && std::isfinite(r.ratio.back());
    power_col.push_back(std::pow(x, r.rate_power));
    log_col.push_back(std::log(x));
    target.push_back(-r.log_survival[i]);
  }
  std::vector<std::vector<double>> columns{power_col};
  if (linear_term) columns.push_back(r.x_grid);
  columns.push_back(log_col);
  columns.push_back(ones);
  r.fitted_gaussian_rate = least_squares(columns, target)[0];
  r.fitted_constant = *std::max_element(r.ratio.begin(), r.ratio.end());
  const double early = *std::max_element(r.ratio.begin(), r.ratio.begin() + static_cast<long>((n + 1) / 2));
  r.bounded = finite && r.ratio.back() <= early;
}

void check_grid(const std::vector<double>& x_grid) {
  if (x_grid.size() < 5) throw DomainError("tail report needs at least 5 grid points");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > 0.0)) throw DomainError("tail report grid must be positive");
    if (i > 0 && !(x_grid[i] > x_grid[i - 1])) throw DomainError("tail report grid must be increasing");
  }
}

}  // namespace

TailBoundReport tail_report(double t, const IGParams& p, const std::vector<double>& x_grid) {
  require_time(t);
  p.validate();
  check_grid(x_grid);
  TailBoundReport r;
  r.t = t;
  r.x_grid = x_grid;
  r.rate_power = 2.0;
  r.claimed_rate = 1.0 / (4.0 * t);
  std::vector<double> log_bound;
  for (double x : x_grid) {
    r.log_survival.push_back(hit_log_survival(x, t, p));
    log_bound.push_back(-std::log(x) + p.delta * p.gamma * x - x * x / (4.0 * t));
  }
  finish_tail_report(r, log_bound, true);
  return r;
}

SamplePath invert_path(const SamplePath& g_path, const std::vector<double>& t_grid) {
  if (g_path.values.empty() || g_path.values.size() != g_path.times.size())
    throw DomainError("invert_path needs a non-empty path");
  if (!g_path.nondecreasing()) throw DomainError("invert_path needs a nondecreasing path");
  const double top = g_path.values.back();
  SamplePath h;
  h.times = t_grid;
  h.values.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t < top)) throw DomainError("invert_path: t grid reaches beyond the path's maximum value");
    const auto it = std::upper_bound(g_path.values.begin(), g_path.values.end(), t);
    h.values.push_back(g_path.times[static_cast<std::size_t>(it - g_path.values.begin())]);
  }
  return h;
}

double sample_hitting_time(const IGParams& p, double t, double dt, Rng& rng) {
  require_time(t);
  if (!(dt > 0.0)) throw DomainError("step dt must be > 0");
  const IGMarginal step{p.delta * dt, p.gamma};
  double g = 0.0;
  long k = 0;
  while (g <= t) {
    g += ig_sample(step, rng);
    ++k;
  }
  return static_cast<double>(k) * dt;
}

double stable_hit_pdf(double x, double t, double beta, const NumericSpec& spec) {
  require_time(t);
  if (!(x > 0.0)) throw DomainError("stable_hit_pdf needs x > 0");
  const double u = t * std::pow(x, -1.0 / beta);
  return t / beta * std::pow(x, -1.0 - 1.0 / beta) * stable_pdf(u, 1.0, beta, spec);
}

double stable_hit_survival(double x, double t, double beta, const NumericSpec& spec) {
  require_time(t);
  if (x <= 0.0) return 1.0;
  if (beta == 0.5) return erfc(x / (2.0 * std::sqrt(t)));
  const double u = t * std::pow(x, -1.0 / beta);
  const Integrand f = [&](double v) { return stable_pdf(v, 1.0, beta, spec); };
  return integrate(f, 0.0, u, spec);
}

double stable_hit_log_survival(double x, double t, double beta, const NumericSpec& spec) {
  if (beta == 0.5 && x > 0.0) {
    require_time(t);
    const double w = x / (2.0 * std::sqrt(t));
    return std::log(erfcx(w)) - w * w;
  }
  return std::log(stable_hit_survival(x, t, beta, spec));
}

double stable_hit_tail_constant(double t, double beta) {
  return (1.0 - beta) * std::pow(t / beta, beta / (beta - 1.0));
}

TailBoundReport stable_hit_tail_report(double t, double beta, const std::vector<double>& x_grid,
                                       const NumericSpec& spec) {
  require_time(t);
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("stable index beta must lie in (0, 1)");
  check_grid(x_grid);
  TailBoundReport r;
  r.t = t;
  r.x_grid = x_grid;
  r.rate_power = 1.0 / (1.0 - beta);
  r.claimed_rate = stable_hit_tail_constant(t, beta);
  std::vector<double> log_bound;
  for (double x : x_grid) {
    r.log_survival.push_back(stable_hit_log_survival(x, t, beta, spec));
    log_bound.push_back(-r.claimed_rate * std::pow(x, r.rate_power));
  }
  finish_tail_report(r, log_bound, false);
  return r;
}

}  // namespace ighit
