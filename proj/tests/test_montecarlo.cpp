#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "ighit/inverse_process.hpp"
#include "ighit/montecarlo.hpp"
#include "oracles.hpp"

using namespace ighit;

TEST_CASE("constant sampler gives an exact moment") {
  const auto est = estimate_moment([](Rng&) { return 3.0; }, 2.0, 1000, 1);
  CHECK(est.value == 9.0);
  CHECK(est.std_error == 0.0);
  CHECK(est.n_samples == 1000);
  CHECK(est.seed == 1);
}

TEST_CASE("estimates are bit-identical across runs and worker counts") {
  const Sampler s = [](Rng& r) { return r.normal(); };
  setenv("IGHIT_THREADS", "1", 1);
  const auto a = draw_samples(s, 5000, 77);
  setenv("IGHIT_THREADS", "4", 1);
  const auto b = draw_samples(s, 5000, 77);
  unsetenv("IGHIT_THREADS");
  CHECK(a == b);
  CHECK(a.size() == 5000);
  CHECK(estimate_moment(s, 2.0, 5000, 77).value == moment_of(a, 2.0).value);
  CHECK(draw_samples(s, 5000, 78) != a);
}

TEST_CASE("standard error halves when n quadruples") {
  const Sampler s = [](Rng& r) { return r.exponential(); };
  const auto small = estimate_moment(s, 1.0, 10000, 3);
  const auto large = estimate_moment(s, 1.0, 40000, 3);
  CHECK(small.std_error / large.std_error == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("non-integer moments use the absolute value") {
  const auto est = moment_of({-4.0, 4.0}, 0.5);
  CHECK(est.value == doctest::Approx(2.0));
}

TEST_CASE("KS null calibration and power") {
  const auto cdf = [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); };
  const long n = 1000;
  int passes = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto draws = draw_samples([](Rng& r) { return r.exponential(); }, n, seed);
    passes += ecdf_ks(draws, cdf) < ks_critical_1pct(n);
  }
  CHECK(passes >= 49);
  auto shifted = draw_samples([](Rng& r) { return r.exponential() + 0.1; }, 10000, 5);
  CHECK(ecdf_ks(shifted, cdf) > 5.0 * ks_critical_1pct(10000));
  CHECK(ks_critical_1pct(10000) == doctest::Approx(0.01628));
}

TEST_CASE("histogram density") {
  const auto u = draw_samples([](Rng& r) { return r.uniform(); }, 100000, 9);
  const Histogram h = histogram_density(u, 10, 0.0, 1.0);
  double area = 0.0;
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    const double w = h.edges[i + 1] - h.edges[i];
    area += w * h.density[i];
    CHECK(std::fabs(h.density[i] - 1.0) < 4.0 * std::sqrt(10.0 / 100000.0));
  }
  CHECK(area == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS(histogram_density(u, 5));
}

TEST_CASE("hitting-time histogram tracks the half-normal density") {
  const long n = 100000;
  const auto draws = draw_samples([](Rng& r) { return sample_hitting_time({1.0, 0.0}, 1.0, 1e-3, r); }, n, 21);
  const Histogram h = histogram_density(draws, 20, 0.0, 3.0);
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    const double a = h.edges[i], b = h.edges[i + 1];
    const double p = oracle::simpson([](double x) { return oracle::half_normal_density(x, 1.0); }, a, b, 20);
    const double sd = std::sqrt(p * (1.0 - p) / n) / (b - a);
    CHECK(std::fabs(h.density[i] - p / (b - a)) < 3.0 * sd);
  }
  const auto m1 = moment_of(draws, 1.0);
  CHECK(std::fabs(m1.value - std::sqrt(2.0 / oracle::pi)) < 4.0 * m1.std_error);
  const auto m2 = moment_of(draws, 2.0);
  CHECK(std::fabs(m2.value - 1.0) < 4.0 * m2.std_error);
}
