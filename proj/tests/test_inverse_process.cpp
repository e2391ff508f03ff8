#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ighit/errors.hpp"
#include "ighit/inverse_process.hpp"
#include "ighit/montecarlo.hpp"
#include "ighit/quadrature.hpp"
#include "oracles.hpp"

using namespace ighit;

namespace {

const std::vector<IGParams> kParams{{1.0, 1.0}, {2.0, 0.5}, {0.5, 2.0}};

double mass(double t, const HittingDensityEval& e) {
  return integrate_semi_infinite([&](double x) { return hit_pdf_integral(x, t, e); }, NumericSpec{}, 0.0,
                                 std::sqrt(t) / e.params.delta)
      .value;
}

double quad_moment(double q, double t, const IGParams& p) {
  return integrate_semi_infinite([&](double x) { return std::pow(x, q) * oracle::hitting_density(x, t, p.delta, p.gamma); },
                                 NumericSpec{}, 0.0, std::sqrt(t) / p.delta)
      .value;
}

}  // namespace

TEST_CASE("driftless density is half-normal") {
  const HittingDensityEval e{{1.0, 0.0}};
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0})
    for (int i = 0; i <= 100; ++i) {
      const double x = 0.05 * i;
      worst = std::max(worst, std::fabs(hit_pdf_integral(x, t, e) - oracle::half_normal_density(x, t)));
    }
  CHECK(worst <= 1e-8);
}

TEST_CASE("integral density matches the erfcx closed form on both routes") {
  for (const auto& p : kParams)
    for (double t : {0.3, 1.0, 3.0})
      for (double x : {0.1, 0.6, 1.3, 2.5}) {
        const double ref = oracle::hitting_density(x, t, p.delta, p.gamma);
        for (auto route : {DensityRoute::automatic, DensityRoute::steepest_descent}) {
          const HittingDensityEval e{p, NumericSpec{}, Prefactor::corrected, route};
          CHECK(hit_pdf_integral(x, t, e) == doctest::Approx(ref).epsilon(1e-7));
        }
        // The oscillating lobes cancel, so the real axis is accurate in absolute terms only.
        const HittingDensityEval real{p, NumericSpec{}, Prefactor::corrected, DensityRoute::real_axis};
        CHECK(std::fabs(hit_pdf_integral(x, t, real) - ref) <= 1e-10);
      }
}

TEST_CASE("steepest descent keeps relative accuracy where the real axis cannot") {
  const IGParams p{1.0, 3.0};
  const double x = 6.0, t = 1.0;
  const double ref = oracle::hitting_density(x, t, p.delta, p.gamma);
  CHECK(hit_pdf_integral(x, t, HittingDensityEval{p}) == doctest::Approx(ref).epsilon(1e-9));
  const HittingDensityEval far{{1.0, 0.0}};
  CHECK(hit_pdf_integral(10.0, 1.0, far) == doctest::Approx(oracle::half_normal_density(10.0, 1.0)).epsilon(1e-9));
}

TEST_CASE("convolution route agrees with the integral representation") {
  for (const auto& p : kParams) {
    const auto model = SubordinatorModel::inverse_gaussian(p);
    for (double t : {0.5, 1.0, 2.0})
      for (double x : {0.25, 0.5, 1.0, 1.5, 2.0})
        CHECK(std::fabs(hit_pdf_convolution(x, t, model) - hit_pdf_integral(x, t, HittingDensityEval{p})) <= 1e-6);
  }
}

TEST_CASE("convolution route for stable and tempered stable subordinators") {
  const auto stable = SubordinatorModel::stable(0.5);
  for (double x : {0.3, 1.0, 2.0})
    CHECK(hit_pdf_convolution(x, 1.0, stable) ==
          doctest::Approx(std::exp(-x * x / 4.0) / std::sqrt(oracle::pi)).epsilon(1e-7));
  const auto ts = SubordinatorModel::tempered_stable(0.5, 1.0);
  const double m = integrate_semi_infinite([&](double x) { return x > 0 ? hit_pdf_convolution(x, 1.0, ts) : 0.0; },
                                           NumericSpec{}, 1e-9, 1.0)
                       .value;
  CHECK(m == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("density integrates to one; the printed prefactor does not") {
  for (const auto& p : kParams)
    for (double t : {0.5, 1.0, 4.0}) {
      CHECK(mass(t, HittingDensityEval{p}) == doctest::Approx(1.0).epsilon(1e-6));
      const double literal = mass(t, HittingDensityEval{p, NumericSpec{}, Prefactor::paper_literal});
      if (t == 1.0) {
        CHECK(literal == doctest::Approx(1.0).epsilon(1e-6));
      } else {
        CHECK(std::fabs(literal - 1.0) > 1e-3);
        CHECK(literal == doctest::Approx(std::exp(0.5 * (t - 1.0) * p.gamma * p.gamma)).epsilon(1e-6));
      }
    }
}

TEST_CASE("duality distribution function") {
  for (const auto& p : kParams)
    for (double x : {0.2, 0.9, 2.0}) {
      const double t = 1.0;
      const double ref = 1.0 - oracle::ig_distribution(t, p.delta * x, p.gamma);
      CHECK(hit_cdf(x, t, p) == doctest::Approx(ref).epsilon(1e-10));
      CHECK(hit_cdf(x, t, p) + hit_survival(x, t, p) == doctest::Approx(1.0).epsilon(1e-14));
      const double h = 1e-4;
      const double deriv = (hit_cdf(x + h, t, p) - hit_cdf(x - h, t, p)) / (2 * h);
      CHECK(std::fabs(deriv - hit_pdf_integral(x, t, HittingDensityEval{p})) <= 1e-5);
    }
  CHECK(hit_survival(3.0, 1.0, {1.0, 0.0}) == doctest::Approx(std::erfc(3.0 / std::sqrt(2.0))).epsilon(1e-10));
  CHECK(hit_log_survival(40.0, 1.0, {1.0, 1.0}) < -600.0);
  CHECK(std::isfinite(hit_log_survival(40.0, 1.0, {1.0, 1.0})));
}

TEST_CASE("time transform") {
  const IGParams p{1.0, 1.0};
  const double x = 0.7;
  for (double s : {0.5, 2.0}) {
    const double quad = integrate_semi_infinite(
        [&](double t) { return t > 0 ? std::exp(-s * t) * oracle::hitting_density(x, t, 1.0, 1.0) : 0.0; }, NumericSpec{},
        0.0, 1.0).value;
    CHECK(hit_lt_time(x, s, p) == doctest::Approx(quad).epsilon(1e-7));
    CHECK(std::abs(hit_lt_time(x, std::complex<double>(s, 0.0), p) - hit_lt_time(x, s, p)) < 1e-14);
    const double llt = integrate_semi_infinite([&](double y) { return std::exp(-1.5 * y) * hit_lt_time(y, s, p); },
                                               NumericSpec{}).value;
    CHECK(hit_llt(1.5, s, p) == doctest::Approx(llt).epsilon(1e-9));
  }
}

TEST_CASE("space transform") {
  const IGParams p{1.0, 0.5};
  for (double t : {0.5, 2.0}) {
    const double quad = integrate_semi_infinite([&](double x) { return std::exp(-x) * oracle::hitting_density(x, t, 1.0, 0.5); },
                                                NumericSpec{}).value;
    CHECK(hit_lt_space(1.0, t, p) == doctest::Approx(quad).epsilon(1e-7));
  }
  CHECK(hit_lt_space(1.0, 1.0, {1.0, 0.0}) == doctest::Approx(std::exp(0.5) * std::erfc(1.0 / std::sqrt(2.0))).epsilon(1e-10));
  CHECK_THROWS_AS(hit_lt_space(0.4, 1.0, p), DomainError);
}

TEST_CASE("first and second moments") {
  for (const auto& p : kParams)
    for (double t : {0.5, 1.0, 3.0}) {
      CHECK(hit_mean(t, p) == doctest::Approx(quad_moment(1.0, t, p)).epsilon(1e-8));
      CHECK(hit_second_moment(t, p) == doctest::Approx(quad_moment(2.0, t, p)).epsilon(1e-8));
      CHECK(hit_second_moment_printed(t, p) == doctest::Approx(2.0 * hit_second_moment(t, p)));
      CHECK(hit_variance(t, p) == doctest::Approx(hit_second_moment(t, p) - hit_mean(t, p) * hit_mean(t, p)));
    }
  CHECK(hit_mean(1.0, {1.0, 0.0}) == doctest::Approx(std::sqrt(2.0 / oracle::pi)).epsilon(1e-14));
  CHECK(hit_second_moment(1.0, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hit_second_moment(2.0, {1.0, 1e-9}) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("general moments by Laplace inversion") {
  const IGParams p{2.0, 0.5};
  for (double q : {0.5, 1.0, 2.0, 3.0})
    CHECK(hit_moment(q, 2.0, p) == doctest::Approx(quad_moment(q, 2.0, p)).epsilon(1e-4));
  for (double q : {0.5, 2.0, 3.0})
    CHECK(hit_moment_printed_numerator(q, 2.0, p) == doctest::Approx(q * hit_moment(q, 2.0, p)).epsilon(1e-6));
}

TEST_CASE("mean and variance asymptotics") {
  const IGParams p{1.0, 1.0};
  CHECK(std::fabs(hit_mean(400.0, p) / 400.0 - 1.0) < 0.01);
  CHECK(std::fabs(hit_mean(1e-4, p) / 1e-2 - std::sqrt(2.0 / oracle::pi)) < 0.01);
  CHECK(hit_variance(1e-4, p) / 1e-2 < 0.05);
  CHECK(hit_mean_asymptote(400.0, p) == doctest::Approx(400.0));
  CHECK(hit_mean_asymptote(1e-4, p) == doctest::Approx(std::sqrt(2e-4 / oracle::pi)));
  const VarianceLaw law = fit_variance_law(p, {100.0, 200.0, 400.0, 800.0});
  CHECK(law.exponent == doctest::Approx(1.0).epsilon(0.02));
  CHECK(law.coefficient == doctest::Approx(1.0).epsilon(0.1));
  const VarianceLaw law2 = fit_variance_law({2.0, 1.0}, {200.0, 400.0, 800.0});
  CHECK(law2.coefficient == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("boundary value and slope") {
  for (const auto& p : kParams) {
    const double t = 1.5;
    CHECK(hit_boundary_value(t, p) == doctest::Approx(ig_levy_tail(t, p)).epsilon(1e-12));
    CHECK(hit_boundary_value(t, p) == doctest::Approx(oracle::hitting_density(0.0, t, p.delta, p.gamma)).epsilon(1e-12));
    const double h = 1e-4;
    const double fd = (oracle::hitting_density(h, t, p.delta, p.gamma) - oracle::hitting_density(0.0, t, p.delta, p.gamma)) / h;
    CHECK(hit_boundary_slope(t, p) == doctest::Approx(fd).epsilon(1e-3));
    CHECK(std::fabs(hit_boundary_value_printed(t, p) - hit_boundary_value(t, p)) > 1e-3);
  }
  CHECK(hit_boundary_value_printed(1.0, {1.0, 1.0}) == doctest::Approx(hit_boundary_value(1.0, {1.0, 1.0})));
}

TEST_CASE("tail report") {
  std::vector<double> grid;
  for (double x = 2.0; x <= 8.0; x += 0.5) grid.push_back(x);
  const TailBoundReport rep = tail_report(1.0, {1.0, 1.0}, grid);
  CHECK(rep.bounded);
  CHECK(rep.ratio.size() == grid.size());
  CHECK(rep.claimed_rate == doctest::Approx(0.25));
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(rep.survival[i] == doctest::Approx(std::exp(rep.log_survival[i])).epsilon(1e-10));
  std::vector<double> wide;
  for (double x = 3.0; x <= 12.0; x += 0.25) wide.push_back(x);
  CHECK(tail_report(1.0, {1.0, 0.0}, wide).fitted_gaussian_rate == doctest::Approx(0.5).epsilon(0.01));
  CHECK(tail_report(2.0, {1.0, 0.0}, wide).fitted_gaussian_rate == doctest::Approx(0.25).epsilon(0.01));
  CHECK_THROWS_AS(tail_report(1.0, {1.0, 1.0}, {1.0, 2.0, 3.0}), DomainError);
}

TEST_CASE("path inversion obeys the Galois relation") {
  Rng rng(17);
  const auto model = SubordinatorModel::inverse_gaussian({1.0, 1.0});
  const SamplePath g = simulate_until(model, 2.0, 0.01, rng);
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i) grid.push_back(0.01 * i);
  const SamplePath h = invert_path(g, grid);
  CHECK(h.nondecreasing());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto k = static_cast<std::size_t>(std::llround(h.values[j] / 0.01));
    CHECK(g.values[k] > grid[j]);
    if (k > 0) CHECK(g.values[k - 1] <= grid[j]);
  }
  CHECK_THROWS_AS(invert_path(g, {5.0}), DomainError);
  SamplePath bad{{0.0, 1.0}, {1.0, 0.5}};
  CHECK_THROWS_AS(invert_path(bad, {0.1}), DomainError);
}

TEST_CASE("hitting times from grid paths follow the duality distribution") {
  const IGParams p{1.0, 1.0};
  const long n = 20000;
  auto draws = draw_samples([&](Rng& r) { return sample_hitting_time(p, 1.0, 1e-3, r); }, n, 8);
  CHECK(ecdf_ks(draws, [&](double x) { return hit_cdf(x, 1.0, p); }) < ks_critical_1pct(n));
}

TEST_CASE("stable hitting time") {
  for (double x : {0.2, 1.0, 2.5}) {
    CHECK(stable_hit_pdf(x, 1.0, 0.5) == doctest::Approx(std::exp(-x * x / 4.0) / std::sqrt(oracle::pi)).epsilon(1e-10));
    CHECK(stable_hit_survival(x, 1.0, 0.5) == doctest::Approx(std::erfc(x / 2.0)).epsilon(1e-10));
  }
  const double beta = 1.0 / 3.0;
  const double tail = integrate_semi_infinite([&](double x) { return stable_hit_pdf(x, 1.0, beta); }, NumericSpec{}, 0.8, 1.0).value;
  CHECK(stable_hit_survival(0.8, 1.0, beta) == doctest::Approx(tail).epsilon(1e-6));
  const double total = integrate_semi_infinite([&](double x) { return x > 0 ? stable_hit_pdf(x, 1.0, beta) : 0.0; },
                                               NumericSpec{}, 1e-12, 1.0).value;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(stable_hit_tail_constant(1.0, 0.5) == doctest::Approx(0.25));
  std::vector<double> grid;
  for (double x = 4.0; x <= 20.0; x += 0.5) grid.push_back(x);
  const auto rep = stable_hit_tail_report(1.0, 0.5, grid);
  CHECK(rep.fitted_gaussian_rate == doctest::Approx(0.25).epsilon(0.02));
  CHECK(rep.rate_power == doctest::Approx(2.0));
}
