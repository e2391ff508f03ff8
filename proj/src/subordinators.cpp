#include "ighit/subordinators.hpp"

#include <cmath>
#include <sstream>

#include "ighit/errors.hpp"
#include "ighit/quadrature.hpp"
#include "ighit/special_functions.hpp"

namespace ighit {
namespace {

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("stable index beta must lie in (0, 1)");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void IGParams::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("IG delta must be > 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("IG gamma must be >= 0");
}

void IGMarginal::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("IG marginal a must be > 0");
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("IG marginal b must be >= 0");
}

double ig_pdf(double x, const IGMarginal& m) {
  if (!(x > 0.0)) throw DomainError("ig_pdf needs x > 0");
  const double a = m.a;
  const double b = m.b;
  // ab - (a^2/x + b^2 x)/2 = -(a - b x)^2 / (2x)
  const double r = a - b * x;
  return a / std::sqrt(2.0 * kPi * x * x * x) * std::exp(-r * r / (2.0 * x));
}

double ig_cdf(double x, const IGMarginal& m) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double a = m.a;
  const double b = m.b;
  const double sx = std::sqrt(x);
  if (b == 0.0) return erfc(a / (kSqrt2 * sx));
  const double z1 = (b * x - a) / sx;
  const double z2 = (b * x + a) / sx;
  double second = 0.0;
  if (2.0 * a * b > 30.0) {
    // e^{2ab} Phi(-z2) = e^{-z1^2/2} erfcx(z2/sqrt2) / 2
    second = 0.5 * std::exp(-0.5 * z1 * z1) * erfcx(z2 / kSqrt2);
  } else {
    second = std::exp(2.0 * a * b) * normal_cdf(-z2);
  }
  return std::min(1.0, normal_cdf(z1) + second);
}

double ig_log_cdf(double x, const IGMarginal& m) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  const double a = m.a;
  const double b = m.b;
  const double sx = std::sqrt(x);
  if (b == 0.0) {
    const double w = a / (kSqrt2 * sx);
    return std::log(erfcx(w)) - w * w;
  }
  const double z1 = (b * x - a) / sx;
  const double z2 = (b * x + a) / sx;
  if (z1 > -5.0) return std::log(ig_cdf(x, m));
  return -0.5 * z1 * z1 + std::log(0.5 * (erfcx(-z1 / kSqrt2) + erfcx(z2 / kSqrt2)));
}

double ig_sample(const IGMarginal& m, Rng& rng) {
  const double a = m.a;
  const double b = m.b;
  const double n = rng.normal();
  const double nu = n * n;
  if (b == 0.0) return a * a / nu;
  // Roots of the chi-square transform; the product of the two roots is
  // (a/b)^2, so the small root is formed from the large one without cancellation.
  const double mean = a / b;
  const double large = mean + nu / (2.0 * b * b) + std::sqrt(4.0 * a * b * nu + nu * nu) / (2.0 * b * b);
  const double small = mean * mean / large;
  return rng.uniform() <= a / (a + b * small) ? small : large;
}

double ig_levy_density(double u, const IGParams& p) {
  if (!(u > 0.0)) throw DomainError("IG Levy density needs u > 0");
  return p.delta / std::sqrt(2.0 * kPi * u * u * u) * std::exp(-0.5 * p.gamma * p.gamma * u);
}

double ig_levy_tail(double u, const IGParams& p) {
  if (!(u > 0.0)) throw DomainError("ig_levy_tail needs u > 0");
  const double g = p.gamma;
  // delta [ sqrt(2/(pi u)) e^{-g^2 u/2} - g erfc(g sqrt(u/2)) ], with the
  // common factor e^{-g^2 u/2} pulled out through erfcx.
  return p.delta * std::exp(-0.5 * g * g * u) *
         (std::sqrt(2.0 / (kPi * u)) - g * erfcx(g * std::sqrt(0.5 * u)));
}

double ig_psi(double s, const IGParams& p) {
  if (s < 0.0) throw DomainError("ig_psi needs s >= 0");
  if (s == 0.0) return 0.0;
  // 2s / (sqrt(g^2 + 2s) + g) avoids cancellation for small s.
  return p.delta * 2.0 * s / (std::sqrt(p.gamma * p.gamma + 2.0 * s) + p.gamma);
}

std::complex<double> ig_psi(std::complex<double> s, const IGParams& p) {
  if (s == 0.0) return 0.0;
  return p.delta * 2.0 * s / (std::sqrt(p.gamma * p.gamma + 2.0 * s) + p.gamma);
}

namespace {

double zolotarev_a(double u, double beta) {
  return std::pow(std::sin(beta * u), beta / (1.0 - beta)) * std::sin((1.0 - beta) * u) /
         std::pow(std::sin(u), 1.0 / (1.0 - beta));
}

}  // namespace

double stable_pdf(double u, double t, double beta, const NumericSpec& spec) {
  require_beta(beta);
  if (!(u > 0.0)) throw DomainError("stable_pdf needs u > 0");
  if (!(t > 0.0)) throw DomainError("stable_pdf needs t > 0");
  if (beta == 0.5) {
    return t / (2.0 * kSqrtPi) * std::pow(u, -1.5) * std::exp(-t * t / (4.0 * u));
  }
  if (std::fabs(beta - 1.0 / 3.0) < 1e-15) {
    // D(t) = t^3 D(1); D(1) has density x^{-3/2} K_{1/3}(2 / sqrt(27 x)) / (3 pi).
    const double x = u / (t * t * t);
    const double k = std::cyl_bessel_k(1.0 / 3.0, 2.0 / std::sqrt(27.0 * x));
    return k * std::pow(x, -1.5) / (3.0 * kPi) / (t * t * t);
  }
  // Mixture form behind Kanter's sampler: P(D(1) <= x) is the average over
  // phi in (0, pi) of exp(-A(phi) x^{-beta/(1-beta)}).
  const double x = u * std::pow(t, -1.0 / beta);
  const double c = std::pow(x, -beta / (1.0 - beta));
  const Integrand f = [&](double phi) {
    const double a = zolotarev_a(phi, beta);
    return a * std::exp(-a * c);
  };
  const double integral = integrate(f, 0.0, kPi, spec);
  return beta / (1.0 - beta) * c / x * integral / kPi * std::pow(t, -1.0 / beta);
}

double stable_sample(double t, double beta, Rng& rng) {
  require_beta(beta);
  // Kanter's representation: (A(U) / E)^{(1-beta)/beta} with Zolotarev's
  // A(u) = sin(beta u)^{beta/(1-beta)} sin((1-beta) u) / sin(u)^{1/(1-beta)}.
  const double u = kPi * rng.uniform();
  const double e = rng.exponential();
  const double a = zolotarev_a(u, beta);
  const double unit = std::pow(a / e, (1.0 - beta) / beta);
  return std::pow(t, 1.0 / beta) * unit;
}

double stable_levy_tail(double u, double beta) {
  require_beta(beta);
  if (!(u > 0.0)) throw DomainError("stable Levy tail needs u > 0");
  return std::pow(u, -beta) / std::tgamma(1.0 - beta);
}

double ts_levy_constant(double beta) {
  require_beta(beta);
  return beta / std::tgamma(1.0 - beta);
}

double ts_pdf(double u, double t, double beta, double mu, const NumericSpec& spec) {
  if (!(mu >= 0.0)) throw DomainError("tempering mu must be >= 0");
  if (!(u > 0.0)) throw DomainError("ts_pdf needs u > 0");
  return std::exp(-mu * u + std::pow(mu, beta) * t) * stable_pdf(u, t, beta, spec);
}

double ts_levy_density(double u, double beta, double mu) {
  if (!(u > 0.0)) throw DomainError("TS Levy density needs u > 0");
  return ts_levy_constant(beta) * std::exp(-mu * u) * std::pow(u, -beta - 1.0);
}

double ts_levy_tail(double u, double beta, double mu) {
  require_beta(beta);
  if (!(mu >= 0.0)) throw DomainError("tempering mu must be >= 0");
  if (!(u > 0.0)) throw DomainError("ts_levy_tail needs u > 0");
  if (mu == 0.0) return stable_levy_tail(u, beta);
  // c int_u^inf e^{-mu y} y^{-beta-1} dy = c mu^beta Gamma(-beta, mu u)
  return ts_levy_constant(beta) * std::pow(mu, beta) * upper_incomplete_gamma(-beta, mu * u);
}

double ts_sample(double t, double beta, double mu, Rng& rng, long max_trials) {
  if (!(mu >= 0.0)) throw DomainError("tempering mu must be >= 0");
  for (long trial = 0; trial < max_trials; ++trial) {
    const double x = stable_sample(t, beta, rng);
    if (mu == 0.0 || rng.uniform() <= std::exp(-mu * x)) return x;
  }
  std::ostringstream msg;
  msg << "tempered stable rejection exceeded " << max_trials << " trials (mu^beta t = "
      << std::pow(mu, beta) * t << ")";
  throw BudgetExceeded(msg.str());
}

bool SamplePath::nondecreasing() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1]) return false;
  return true;
}

bool SamplePath::strictly_increasing() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) return false;
  return true;
}

SubordinatorModel SubordinatorModel::inverse_gaussian(const IGParams& p) {
  p.validate();
  return SubordinatorModel(p);
}

SubordinatorModel SubordinatorModel::stable(double beta) {
  require_beta(beta);
  return SubordinatorModel(StableParams{beta});
}

SubordinatorModel SubordinatorModel::tempered_stable(double beta, double mu) {
  require_beta(beta);
  if (!(mu >= 0.0)) throw DomainError("tempering mu must be >= 0");
  return SubordinatorModel(TemperedStableParams{beta, mu});
}

SubordinatorModel SubordinatorModel::with_spec(const NumericSpec& spec) const {
  SubordinatorModel copy = *this;
  copy.spec_ = spec;
  return copy;
}

std::string SubordinatorModel::name() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const IGParams& p) { out << "IG(delta=" << p.delta << ", gamma=" << p.gamma << ")"; },
                 [&](const StableParams& p) { out << "stable(beta=" << p.beta << ")"; },
                 [&](const TemperedStableParams& p) {
                   out << "tempered_stable(beta=" << p.beta << ", mu=" << p.mu << ")";
                 },
             },
             kind_);
  return out.str();
}

double SubordinatorModel::psi(double s) const {
  if (s < 0.0) throw DomainError("Laplace exponent needs s >= 0");
  return std::visit(Overloaded{
                        [&](const IGParams& p) { return ig_psi(s, p); },
                        [&](const StableParams& p) { return std::pow(s, p.beta); },
                        [&](const TemperedStableParams& p) {
                          return std::pow(s + p.mu, p.beta) - std::pow(p.mu, p.beta);
                        },
                    },
                    kind_);
}

std::complex<double> SubordinatorModel::psi(std::complex<double> s) const {
  return std::visit(Overloaded{
                        [&](const IGParams& p) { return ig_psi(s, p); },
                        [&](const StableParams& p) { return std::pow(s, p.beta); },
                        [&](const TemperedStableParams& p) {
                          return std::pow(s + p.mu, p.beta) - std::pow(p.mu, p.beta);
                        },
                    },
                    kind_);
}

double SubordinatorModel::levy_density(double u) const {
  return std::visit(Overloaded{
                        [&](const IGParams& p) { return ig_levy_density(u, p); },
                        [&](const StableParams& p) { return ts_levy_density(u, p.beta, 0.0); },
                        [&](const TemperedStableParams& p) { return ts_levy_density(u, p.beta, p.mu); },
                    },
                    kind_);
}

double SubordinatorModel::levy_tail(double u) const {
  return std::visit(Overloaded{
                        [&](const IGParams& p) { return ig_levy_tail(u, p); },
                        [&](const StableParams& p) { return stable_levy_tail(u, p.beta); },
                        [&](const TemperedStableParams& p) { return ts_levy_tail(u, p.beta, p.mu); },
                    },
                    kind_);
}

double SubordinatorModel::levy_tail_exponent() const {
  return std::visit(Overloaded{
                        [](const IGParams&) { return 0.5; },
                        [](const StableParams& p) { return p.beta; },
                        [](const TemperedStableParams& p) { return p.beta; },
                    },
                    kind_);
}

double SubordinatorModel::marginal_pdf(double u, double x) const {
  if (!(x > 0.0)) throw DomainError("marginal_pdf needs x > 0");
  return std::visit(Overloaded{
                        [&](const IGParams& p) { return ig_pdf(u, IGMarginal{p.delta * x, p.gamma}); },
                        [&](const StableParams& p) { return stable_pdf(u, x, p.beta, spec_); },
                        [&](const TemperedStableParams& p) { return ts_pdf(u, x, p.beta, p.mu, spec_); },
                    },
                    kind_);
}

double SubordinatorModel::sample_increment(double dt, Rng& rng) const {
  if (!(dt > 0.0)) throw DomainError("sample_increment needs dt > 0");
  return std::visit(Overloaded{
                        [&](const IGParams& p) { return ig_sample(IGMarginal{p.delta * dt, p.gamma}, rng); },
                        [&](const StableParams& p) { return stable_sample(dt, p.beta, rng); },
                        [&](const TemperedStableParams& p) { return ts_sample(dt, p.beta, p.mu, rng); },
                    },
                    kind_);
}

SamplePath simulate_path(const SubordinatorModel& model, double horizon, double dt, Rng& rng) {
  if (!(horizon > 0.0)) throw DomainError("path horizon must be > 0");
  if (!(dt > 0.0 && dt <= horizon)) throw DomainError("path step dt must satisfy 0 < dt <= T");
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  SamplePath path;
  path.times.reserve(steps + 1);
  path.values.reserve(steps + 1);
  path.times.push_back(0.0);
  path.values.push_back(0.0);
  double value = 0.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = k == steps ? horizon : static_cast<double>(k) * dt;
    value += model.sample_increment(t - path.times.back(), rng);
    path.times.push_back(t);
    path.values.push_back(value);
  }
  return path;
}

SamplePath simulate_until(const SubordinatorModel& model, double level, double dt, Rng& rng) {
  if (!(dt > 0.0)) throw DomainError("path step dt must be > 0");
  SamplePath path;
  path.times.push_back(0.0);
  path.values.push_back(0.0);
  double value = 0.0;
  std::size_t k = 0;
  while (value <= level) {
    ++k;
    value += model.sample_increment(dt, rng);
    path.times.push_back(static_cast<double>(k) * dt);
    path.values.push_back(value);
  }
  return path;
}

}  // namespace ighit
