#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ighit/numeric_spec.hpp"
#include "ighit/random.hpp"

namespace ighit {

/// Inverse Gaussian subordinator G(t): first time B(s) + gamma s crosses
/// delta t. gamma = 0 is the driftless (1/2-stable) limit.
struct IGParams {
  double delta = 1.0;
  double gamma = 1.0;

  void validate() const;
};

/// IG(a, b) marginal; G(t) ~ IG(delta t, gamma).
struct IGMarginal {
  double a = 1.0;
  double b = 1.0;

  void validate() const;
};

/// beta-stable subordinator with E exp(-s D(t)) = exp(-t s^beta).
struct StableParams {
  double beta = 0.5;
};

/// Exponentially tempered stable subordinator, E exp(-s D(t)) =
/// exp(-t ((s + mu)^beta - mu^beta)).
struct TemperedStableParams {
  double beta = 0.5;
  double mu = 1.0;
};

double ig_pdf(double x, const IGMarginal& m);
double ig_cdf(double x, const IGMarginal& m);
/// log of ig_cdf, finite far into the left tail where ig_cdf underflows.
double ig_log_cdf(double x, const IGMarginal& m);
/// Michael-Schucany-Haas transformation with rejection; b = 0 draws the
/// 1/2-stable limit a^2 / N^2.
double ig_sample(const IGMarginal& m, Rng& rng);

/// Pi(u) = pi(u, inf) for the IG Levy measure delta (2 pi x^3)^{-1/2} e^{-gamma^2 x / 2}.
double ig_levy_tail(double u, const IGParams& p);
double ig_levy_density(double u, const IGParams& p);
/// Laplace exponent delta (sqrt(gamma^2 + 2 s) - gamma).
double ig_psi(double s, const IGParams& p);
std::complex<double> ig_psi(std::complex<double> s, const IGParams& p);

double stable_pdf(double u, double t, double beta, const NumericSpec& spec = {});
double stable_sample(double t, double beta, Rng& rng);
/// Pi(u) = u^{-beta} / Gamma(1 - beta).
double stable_levy_tail(double u, double beta);

/// Constant of the tempered Levy density c e^{-mu x} x^{-beta-1}; fixed to
/// beta / Gamma(1 - beta) so the measure reproduces the stated exponent.
double ts_levy_constant(double beta);
double ts_pdf(double u, double t, double beta, double mu, const NumericSpec& spec = {});
double ts_levy_density(double u, double beta, double mu);
double ts_levy_tail(double u, double beta, double mu);
double ts_sample(double t, double beta, double mu, Rng& rng, long max_trials = 1L << 22);

/// Nondecreasing path on a strictly increasing time grid starting at 0.
struct SamplePath {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
  bool nondecreasing() const;
  bool strictly_increasing() const;
};

/// One of the three driving subordinators behind a common interface.
class SubordinatorModel {
 public:
  using Kind = std::variant<IGParams, StableParams, TemperedStableParams>;

  static SubordinatorModel inverse_gaussian(const IGParams& p);
  static SubordinatorModel stable(double beta);
  static SubordinatorModel tempered_stable(double beta, double mu);

  const Kind& kind() const { return kind_; }
  std::string name() const;

  double psi(double s) const;
  std::complex<double> psi(std::complex<double> s) const;
  double levy_density(double u) const;
  double levy_tail(double u) const;
  /// Pi(u) ~ u^{-e} as u -> 0; e = 1/2 for IG and beta otherwise.
  double levy_tail_exponent() const;
  /// Density of Y(x) at u.
  double marginal_pdf(double u, double x) const;
  /// Exact draw of Y(t + dt) - Y(t).
  double sample_increment(double dt, Rng& rng) const;

  const NumericSpec& spec() const { return spec_; }
  SubordinatorModel with_spec(const NumericSpec& spec) const;

 private:
  explicit SubordinatorModel(Kind kind) : kind_(kind) {}

  Kind kind_;
  NumericSpec spec_{};
};

/// Cumulative sums of exact increments on the grid 0, dt, 2 dt, ..., T.
SamplePath simulate_path(const SubordinatorModel& model, double horizon, double dt, Rng& rng);

/// Grid path continued until its value first exceeds `level`.
SamplePath simulate_until(const SubordinatorModel& model, double level, double dt, Rng& rng);

}  // namespace ighit
