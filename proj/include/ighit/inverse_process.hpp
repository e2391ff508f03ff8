#pragma once

#include <complex>
#include <vector>

#include "ighit/numeric_spec.hpp"
#include "ighit/random.hpp"
#include "ighit/subordinators.hpp"

namespace ighit {

/// Exponential factor in front of the integral representation of h(x, t).
/// `paper_literal` keeps the t-free exponent e^{delta gamma x - gamma^2 / 2}
/// and exists only so the verification report can measure its defect.
enum class Prefactor { corrected, paper_literal };

/// How the oscillatory y-integral is evaluated.
///  real_axis        omega = sqrt(y), one adaptive cell per half period
///  steepest_descent contour shifted through the saddle, positive integrand
///  automatic        real_axis unless the prefactor is large enough that the
///                   oscillating lobes cancel beyond double precision
enum class DensityRoute { automatic, real_axis, steepest_descent };

struct HittingDensityEval {
  IGParams params{};
  NumericSpec spec{};
  Prefactor prefactor = Prefactor::corrected;
  DensityRoute route = DensityRoute::automatic;
};

/// h(x, t) from the integral representation; x = 0 returns hit_boundary_value.
double hit_pdf_integral(double x, double t, const HittingDensityEval& eval);

/// Density of inf{x : Y(x) > t} as int_0^t Pi(t - y) p(y | x) dy.
double hit_pdf_convolution(double x, double t, const SubordinatorModel& model,
                           const NumericSpec& spec = {});

/// P(H(t) <= x) = P(G(x) >= t).
double hit_cdf(double x, double t, const IGParams& p);
double hit_survival(double x, double t, const IGParams& p);
double hit_log_survival(double x, double t, const IGParams& p);

/// int_0^inf e^{-s t} h(x, t) dt = (Psi(s) / s) e^{-x Psi(s)}.
double hit_lt_time(double x, double s, const IGParams& p);
std::complex<double> hit_lt_time(double x, std::complex<double> s, const IGParams& p);
/// Laplace transform in both variables, Psi(s) / (s (u + Psi(s))).
double hit_llt(double u, double s, const IGParams& p);
/// int_0^inf e^{-mu x} h(x, t) dx, defined for mu > delta gamma.
double hit_lt_space(double mu, double t, const IGParams& p, const NumericSpec& spec = {});

double hit_mean(double t, const IGParams& p);
double hit_second_moment(double t, const IGParams& p);
/// The second-moment expression exactly as printed (twice the true value).
double hit_second_moment_printed(double t, const IGParams& p);
/// E H(t)^q by inverting Gamma(1 + q) / (s Psi(s)^q).
double hit_moment(double q, double t, const IGParams& p, const NumericSpec& spec = {});
/// Inverts the transform with the printed numerator q Gamma(1 + q).
double hit_moment_printed_numerator(double q, double t, const IGParams& p,
                                    const NumericSpec& spec = {});
double hit_variance(double t, const IGParams& p);

/// Leading-order mean: gamma t / delta once gamma^2 t > 1, otherwise
/// sqrt(2 t / pi) / delta.
double hit_mean_asymptote(double t, const IGParams& p);

/// Var H(t) ~ coefficient * t^exponent, fitted by log-log least squares.
struct VarianceLaw {
  double coefficient = 0.0;
  double exponent = 0.0;
};
VarianceLaw fit_variance_law(const IGParams& p, const std::vector<double>& times);

double hit_boundary_value(double t, const IGParams& p);
double hit_boundary_slope(double t, const IGParams& p);
double hit_boundary_value_printed(double t, const IGParams& p);

/// Survival against a claimed tail bound. `ratio` is survival / bound; the
/// fitted rate is the coefficient of x^rate_power in a least-squares model of
/// -ln survival that also carries ln x and constant terms.
struct TailBoundReport {
  double t = 0.0;
  std::vector<double> x_grid;
  std::vector<double> survival;
  std::vector<double> log_survival;
  std::vector<double> bound_values;
  std::vector<double> ratio;
  double fitted_constant = 0.0;
  double fitted_gaussian_rate = 0.0;
  double rate_power = 2.0;
  double claimed_rate = 0.0;
  bool bounded = false;
};

/// Bound x^{-1} e^{delta gamma x - x^2 / (4 t)}; claimed rate 1 / (4 t).
TailBoundReport tail_report(double t, const IGParams& p, const std::vector<double>& x_grid);

/// Right-continuous generalized inverse on the grid: for every t, the first
/// grid time u with G(u) > t.
SamplePath invert_path(const SamplePath& g_path, const std::vector<double>& t_grid);

/// H(t) read off one IG path simulated on a grid of step dt.
double sample_hitting_time(const IGParams& p, double t, double dt, Rng& rng);

/// Stable hitting time E(t) = inf{x : D(x) > t}.
double stable_hit_pdf(double x, double t, double beta, const NumericSpec& spec = {});
double stable_hit_survival(double x, double t, double beta, const NumericSpec& spec = {});
double stable_hit_log_survival(double x, double t, double beta, const NumericSpec& spec = {});
/// N = (1 - beta) (t / beta)^{beta / (beta - 1)}.
double stable_hit_tail_constant(double t, double beta);
/// Fits -ln P(E(t) > x) on x^{1/(1-beta)}, ln x and 1; bound e^{-N x^{1/(1-beta)}}.
TailBoundReport stable_hit_tail_report(double t, double beta, const std::vector<double>& x_grid,
                                       const NumericSpec& spec = {});

}  // namespace ighit
