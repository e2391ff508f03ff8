#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ighit/errors.hpp"
#include "ighit/pde_residuals.hpp"
#include "oracles.hpp"

using namespace ighit;

namespace {

std::vector<double> uniform_times(double h, double end) {
  std::vector<double> t;
  const auto n = static_cast<long>(std::llround(end / h));
  for (long k = 0; k <= n; ++k) t.push_back(static_cast<double>(k) * h);
  return t;
}

double caputo_half_sqrt_error(double h) {
  const auto t = uniform_times(h, 1.0);
  std::vector<double> f;
  for (double v : t) f.push_back(std::sqrt(v));
  const auto d = caputo_derivative(t, f, 0.5);
  return std::fabs(d.back() - std::sqrt(oracle::pi) / 2.0);
}

const ResidualGrid kGrid{{0.5, 1.0, 1.5, 2.0}, {0.5, 1.0, 2.0}, 1.0 / 32.0, 3, 0.0};

}  // namespace

TEST_CASE("L1 Caputo derivative of t is exact") {
  const auto t = uniform_times(1.0 / 64.0, 2.0);
  const auto d = caputo_derivative(t, t, 0.5);
  CHECK(d.front() == 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(d[i] == doctest::Approx(2.0 * std::sqrt(t[i] / oracle::pi)).epsilon(1e-12));
}

TEST_CASE("L1 Caputo derivative of sqrt(t) converges to sqrt(pi)/2") {
  const double e1 = caputo_half_sqrt_error(1.0 / 64.0);
  const double e2 = caputo_half_sqrt_error(1.0 / 128.0);
  const double e3 = caputo_half_sqrt_error(1.0 / 256.0);
  CHECK(e3 < e2);
  CHECK(e2 < e1);
  CHECK(e3 < 1e-2);
  CHECK(std::log2(e2 / e3) > 0.4);
}

TEST_CASE("Caputo derivative vanishes on constants and rejects bad grids") {
  const auto t = uniform_times(0.1, 1.0);
  const std::vector<double> c(t.size(), 3.0);
  for (double v : caputo_derivative(t, c, 0.5)) CHECK(v == 0.0);
  CHECK_THROWS_AS(caputo_derivative({0.0, 0.1, 0.3}, {0.0, 1.0, 2.0}, 0.5), DomainError);
  CHECK_THROWS_AS(caputo_derivative(t, c, 1.5), DomainError);
}

TEST_CASE("hitting PDE with the closed-form density converges at second order") {
  for (const IGParams p : {IGParams{1.0, 0.0}, IGParams{1.0, 1.0}, IGParams{2.0, 0.5}}) {
    const Density2D h = [p](double x, double t) { return oracle::hitting_density(x, t, p.delta, p.gamma); };
    const ResidualReport rep = residual_hitting_pde(p, h, kGrid);
    CHECK(rep.levels.size() == 3);
    CHECK(rep.levels[1].step_x == doctest::Approx(rep.levels[0].step_x / 2.0));
    CHECK(rep.refinement_ratio == doctest::Approx(4.0).epsilon(0.1));
    CHECK(rep.observed_order == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("hitting PDE rejects wrong densities") {
  const IGParams p{1.0, 1.0};
  const Density2D right = [](double x, double t) { return oracle::hitting_density(x, t, 1.0, 1.0); };
  const Density2D wrong = [](double x, double t) { return oracle::hitting_density(x, t, 1.0, 1.0) * std::exp(0.5 * (t - 1.0)); };
  const auto good = residual_hitting_pde(p, right, kGrid);
  const auto bad = residual_hitting_pde(p, wrong, kGrid);
  CHECK(bad.refinement_ratio == doctest::Approx(1.0).epsilon(0.05));
  CHECK(bad.finest().max_abs > 100.0 * good.finest().max_abs);
  ResidualGrid perturbed = kGrid;
  perturbed.perturbation = 0.01;
  CHECK(residual_hitting_pde(p, right, perturbed).finest().max_abs > 10.0 * good.finest().max_abs);
}

TEST_CASE("IG density PDE") {
  const ResidualReport rep = residual_ig_pde({1.0, 1.0}, kGrid);
  CHECK(rep.refinement_ratio == doctest::Approx(4.0).epsilon(0.1));
  CHECK(rep.relative_residual() < 1e-3);
}

TEST_CASE("pseudo-differential transform equation") {
  const auto exact = residual_pseudo_lt({1.0, 1.0}, {0.5, 1.0}, {0.5, 1.0}, TransformSource::closed_form);
  CHECK(exact.finest().max_abs <= 1e-12);
  const auto off = residual_pseudo_lt({1.0, 1.0}, {0.5, 1.0}, {0.5, 1.0}, TransformSource::closed_form, {}, 1.0 / 16.0, 3, 0.01);
  CHECK(off.finest().max_abs > 1e-4);
}

TEST_CASE("tempered stable PDE sign") {
  const ResidualGrid grid{{0.4, 0.8, 1.2}, {0.5, 1.0}, 1.0 / 32.0, 2, 0.0};
  const auto as_printed = residual_ts_pde(2, 1.0, grid, NumericSpec::strict());
  const auto flipped = residual_ts_pde(2, 1.0, grid, NumericSpec::strict(), TsSign::flipped);
  CHECK(as_printed.refinement_ratio == doctest::Approx(4.0).epsilon(0.1));
  CHECK(flipped.finest().max_abs > 100.0 * as_printed.finest().max_abs);
  CHECK_THROWS_AS(residual_ts_pde(4, 1.0, grid), DomainError);
}

TEST_CASE("driftless fractional hitting equation with the closed-form density") {
  // H(0) = 0, so the density vanishes at t = 0 for x > 0.
  const Density2D h = [](double x, double t) { return t > 0.0 ? oracle::half_normal_density(x, t) : 0.0; };
  const ResidualGrid grid{{0.5, 1.0, 1.5}, {0.5, 1.0}, 1.0 / 32.0, 3, 0.0};
  const auto rep = residual_frac_hitting(h, grid);
  CHECK(rep.observed_order == doctest::Approx(1.5).epsilon(0.35));
  CHECK(rep.finest().max_abs < 1e-2);
  const ResidualGrid off_grid{{0.5}, {0.51}, 1.0 / 32.0, 2, 0.0};
  CHECK_THROWS_AS(residual_frac_hitting(h, off_grid), DomainError);
}

TEST_CASE("grid validation") {
  ResidualGrid empty{{}, {1.0}, 0.1, 2, 0.0};
  CHECK_THROWS_AS(residual_ig_pde({1.0, 1.0}, empty), DomainError);
  ResidualGrid one_level{{1.0}, {1.0}, 0.1, 1, 0.0};
  CHECK_THROWS_AS(residual_ig_pde({1.0, 1.0}, one_level), DomainError);
}
