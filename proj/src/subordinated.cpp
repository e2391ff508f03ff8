#include "ighit/subordinated.hpp"

#include <cmath>

#include "ighit/errors.hpp"
#include "ighit/quadrature.hpp"
#include "ighit/special_functions.hpp"

namespace ighit {

double sub_pdf(double x, double t, const SubordinatedEval& eval) {
  if (!(t > 0.0)) throw DomainError("sub_pdf needs t > 0");
  if (!std::isfinite(x)) throw DomainError("sub_pdf needs finite x");
  // The outer quadrature sees the inner one's error as noise, so the inner
  // density is evaluated on the positive contour-shifted form and tighter.
  NumericSpec inner = eval.spec;
  inner.rel_tol *= 1e-2;
  inner.abs_tol *= 1e-2;
  const HittingDensityEval h{eval.params, inner, Prefactor::corrected, DensityRoute::steepest_descent};
  const double x2 = x * x;
  const Integrand f = [&](double v) {
    const double r = v * v;
    const double w = std::exp(-x2 / (2.0 * r));
    if (w == 0.0) return 0.0;
    return w * hit_pdf_integral(r, t, h);
  };
  // H(t) has spread of order sqrt(t) / delta + gamma t / delta; v = sqrt(r).
  const double spread = std::sqrt((std::sqrt(t) + eval.params.gamma * t) / eval.params.delta);
  return std::sqrt(2.0 / kPi) * integrate_semi_infinite(f, eval.spec, 0.0, spread).value;
}

SamplePath sub_sample_path(const IGParams& p, double horizon, double dt, Rng& rng) {
  if (!(horizon > 0.0)) throw DomainError("path horizon must be > 0");
  if (!(dt > 0.0 && dt <= horizon)) throw DomainError("path step dt must satisfy 0 < dt <= T");
  const auto model = SubordinatorModel::inverse_gaussian(p);
  const SamplePath g = simulate_until(model, horizon, dt, rng);
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  std::vector<double> grid;
  for (std::size_t k = 0; k <= steps; ++k) grid.push_back(k == steps ? horizon : static_cast<double>(k) * dt);
  const SamplePath h = invert_path(g, grid);

  SamplePath x;
  x.times = grid;
  x.values.reserve(grid.size());
  double b = 0.0;
  double clock = 0.0;
  for (double hv : h.values) {
    const double dh = hv - clock;
    if (dh > 0.0) b += std::sqrt(dh) * rng.normal();
    clock = hv;
    x.values.push_back(b);
  }
  return x;
}

double sample_subordinated(const IGParams& p, double t, double dt, Rng& rng) {
  const double h = sample_hitting_time(p, t, dt, rng);
  return std::sqrt(h) * rng.normal();
}

}  // namespace ighit
