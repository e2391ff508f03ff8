#include "ighit/pde_residuals.hpp"

#include <algorithm>
#include <cmath>

#include "ighit/errors.hpp"
#include "ighit/parallel.hpp"
#include "ighit/quadrature.hpp"
#include "ighit/special_functions.hpp"
#include "ighit/subordinated.hpp"

namespace ighit {
namespace {

struct PointResult {
  double residual = 0.0;
  double scale = 0.0;
};

// op(point index, level) for points enumerated row-major over (x, t).
using PointOperator = std::function<PointResult(std::size_t, int)>;

double level_step(double step, int level) { return std::ldexp(step, -level); }

void validate_grid(const ResidualGrid& g) {
  if (g.x.empty() || g.t.empty()) throw DomainError("residual grid needs x and t points");
  if (!(g.step > 0.0)) throw DomainError("residual step must be > 0");
  if (g.levels < 2) throw DomainError("residual checks need at least two resolutions");
}

ResidualReport run_levels(std::string name, const std::vector<double>& xs, const std::vector<double>& ts,
                          double step, int levels, const PointOperator& op) {
  ResidualReport report;
  report.equation = std::move(name);
  report.x = xs;
  report.t = ts;
  const std::size_t n = xs.size() * ts.size();
  for (int level = 0; level < levels; ++level) {
    std::vector<PointResult> results(n);
    parallel_for(n, [&](std::size_t k) { results[k] = op(k, level); });
    ResidualLevel out;
    out.step_x = level_step(step, level);
    out.step_t = out.step_x;
    double sum2 = 0.0;
    for (const auto& r : results) {
      out.residuals.push_back(r.residual);
      out.max_abs = std::max(out.max_abs, std::fabs(r.residual));
      out.scale = std::max(out.scale, r.scale);
      sum2 += r.residual * r.residual;
    }
    out.rms = std::sqrt(sum2 / static_cast<double>(n));
    report.levels.push_back(std::move(out));
  }
  const auto& a = report.levels[report.levels.size() - 2];
  const auto& b = report.levels.back();
  report.refinement_ratio = a.max_abs / b.max_abs;
  report.observed_order = std::log2(report.refinement_ratio);
  return report;
}

Density2D perturbed(Density2D f, double eps) {
  if (eps == 0.0) return f;
  return [f = std::move(f), eps](double x, double t) { return (1.0 + eps * x) * f(x, t); };
}

double d1(const Density2D& f, double x, double t, double h, bool in_t) {
  if (in_t) return (f(x, t + h) - f(x, t - h)) / (2.0 * h);
  return (f(x + h, t) - f(x - h, t)) / (2.0 * h);
}

double d2(const Density2D& f, double x, double t, double h, bool in_t) {
  const double c = f(x, t);
  if (in_t) return (f(x, t + h) - 2.0 * c + f(x, t - h)) / (h * h);
  return (f(x + h, t) - 2.0 * c + f(x - h, t)) / (h * h);
}

double d3x(const Density2D& f, double x, double t, double h) {
  return (f(x + 2.0 * h, t) - 2.0 * f(x + h, t) + 2.0 * f(x - h, t) - f(x - 2.0 * h, t)) / (2.0 * h * h * h);
}

double d4x(const Density2D& f, double x, double t, double h) {
  return (f(x + 2.0 * h, t) - 4.0 * f(x + h, t) + 6.0 * f(x, t) - 4.0 * f(x - h, t) + f(x - 2.0 * h, t)) /
         (h * h * h * h);
}

double max_abs_of(std::initializer_list<double> terms) {
  double m = 0.0;
  for (double v : terms) m = std::max(m, std::fabs(v));
  return m;
}

// L1 Caputo value at the last node of a uniform series.
double caputo_last(const std::vector<double>& v, std::size_t stride, std::size_t n, double dt, double alpha) {
  const double c = std::pow(dt, -alpha) / std::tgamma(2.0 - alpha);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double b = std::pow(static_cast<double>(k + 1), 1.0 - alpha) - std::pow(static_cast<double>(k), 1.0 - alpha);
    acc += b * (v[(n - k) * stride] - v[(n - k - 1) * stride]);
  }
  return c * acc;
}

std::size_t steps_to(double target, double step) {
  const double n = std::round(target / step);
  if (n < 1.0 || std::fabs(n * step - target) > 1e-9 * std::max(1.0, std::fabs(target)))
    throw DomainError("fractional residual points must be positive multiples of the coarsest step");
  return static_cast<std::size_t>(n);
}

// Series f(0), f(h), ..., f(N h) at the finest step along the fractional
// variable, for every grid point; coarser levels read it with a stride.
std::vector<std::vector<double>> tabulate_series(const ResidualGrid& g, const Density2D& f, bool along_t) {
  const double fine = level_step(g.step, g.levels - 1);
  const std::size_t nt = g.t.size();
  std::vector<std::vector<double>> series(g.x.size() * nt);
  parallel_for(series.size(), [&](std::size_t k) {
    const double x = g.x[k / nt];
    const double t = g.t[k % nt];
    const std::size_t n = steps_to(along_t ? t : x, fine);
    auto& s = series[k];
    s.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      const double u = static_cast<double>(i) * fine;
      s[i] = along_t ? f(x, u) : f(u, t);
    }
  });
  return series;
}

}  // namespace

std::vector<double> caputo_derivative(const std::vector<double>& times, const std::vector<double>& values,
                                      double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("Caputo order must lie in (0, 1)");
  if (times.size() != values.size() || times.size() < 2)
    throw DomainError("Caputo derivative needs matching samples on at least two nodes");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw DomainError("Caputo grid must be increasing");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::fabs((times[i] - times[i - 1]) - dt) > 1e-9 * dt) throw DomainError("Caputo grid must be uniform");
  }
  const std::size_t n = times.size();
  const double c = std::pow(dt, -alpha) / std::tgamma(2.0 - alpha);
  std::vector<double> b(n);
  for (std::size_t k = 0; k < n; ++k)
    b[k] = std::pow(static_cast<double>(k + 1), 1.0 - alpha) - std::pow(static_cast<double>(k), 1.0 - alpha);
  std::vector<double> out(n, 0.0);
  for (std::size_t m = 1; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) acc += b[k] * (values[m - k] - values[m - k - 1]);
    out[m] = c * acc;
  }
  return out;
}

ResidualReport residual_hitting_pde(const IGParams& p, const Density2D& h0, const ResidualGrid& g) {
  validate_grid(g);
  const Density2D h = perturbed(h0, g.perturbation);
  const std::size_t nt = g.t.size();
  const double a = 2.0 * p.delta * p.gamma;
  const double c = 2.0 * p.delta * p.delta;
  return run_levels("hitting", g.x, g.t, g.step, g.levels, [&](std::size_t k, int level) {
    const double x = g.x[k / nt];
    const double t = g.t[k % nt];
    const double s = level_step(g.step, level);
    const double hxx = d2(h, x, t, s, false);
    const double hx = d1(h, x, t, s, false);
    const double ht = d1(h, x, t, s, true);
    return PointResult{hxx - a * hx - c * ht, max_abs_of({hxx, a * hx, c * ht})};
  });
}

ResidualReport residual_hitting_pde(const HittingDensityEval& eval, const ResidualGrid& grid) {
  const Density2D h = [eval](double x, double t) { return hit_pdf_integral(x, t, eval); };
  return residual_hitting_pde(eval.params, h, grid);
}

ResidualReport residual_ig_pde(const IGParams& p, const ResidualGrid& g, const NumericSpec&) {
  validate_grid(g);
  p.validate();
  const Density2D gd = perturbed(
      [p](double x, double t) { return ig_pdf(x, IGMarginal{p.delta * t, p.gamma}); }, g.perturbation);
  const std::size_t nt = g.t.size();
  const double a = 2.0 * p.delta * p.gamma;
  const double c = 2.0 * p.delta * p.delta;
  return run_levels("ig", g.x, g.t, g.step, g.levels, [&](std::size_t k, int level) {
    const double x = g.x[k / nt];
    const double t = g.t[k % nt];
    const double s = level_step(g.step, level);
    const double gtt = d2(gd, x, t, s, true);
    const double gt = d1(gd, x, t, s, true);
    const double gx = d1(gd, x, t, s, false);
    return PointResult{gtt - a * gt - c * gx, max_abs_of({gtt, a * gt, c * gx})};
  });
}

ResidualReport residual_pseudo_lt(const IGParams& p, const std::vector<double>& s_grid,
                                  const std::vector<double>& x_grid, TransformSource source,
                                  const NumericSpec& spec, double step, int levels, double perturbation) {
  p.validate();
  if (s_grid.empty() || x_grid.empty()) throw DomainError("pseudo-differential check needs s and x points");
  for (double s : s_grid)
    if (!(s > 0.0)) throw DomainError("transform variable s must be > 0");
  if (levels < 2) throw DomainError("residual checks need at least two resolutions");
  const HittingDensityEval eval{p, spec, Prefactor::corrected, DensityRoute::automatic};
  const auto factor = [perturbation](double x) { return 1.0 + perturbation * x; };

  const auto numeric_transform = [&](double x, double s) {
    const Integrand f = [&](double t) { return std::exp(-s * t) * hit_pdf_integral(x, t, eval); };
    return factor(x) * integrate_semi_infinite(f, spec, 0.0, 1.0 / s).value;
  };
  const std::size_t ns = s_grid.size();
  return run_levels("pseudo-lt", x_grid, s_grid, step, levels, [&](std::size_t k, int level) {
    const double x = x_grid[k / ns];
    const double s = s_grid[k % ns];
    const double psi = ig_psi(s, p);
    if (source == TransformSource::closed_form) {
      const double value = factor(x) * hit_lt_time(x, s, p);
      const double deriv = factor(x) * (-psi) * hit_lt_time(x, s, p) + perturbation * hit_lt_time(x, s, p);
      return PointResult{deriv + psi * value, max_abs_of({deriv, psi * value})};
    }
    const double h = level_step(step, level);
    const double deriv = (numeric_transform(x + h, s) - numeric_transform(x - h, s)) / (2.0 * h);
    const double value = numeric_transform(x, s);
    return PointResult{deriv + psi * value, max_abs_of({deriv, psi * value})};
  });
}

ResidualReport residual_frac_hitting(const Density2D& h0, const ResidualGrid& g) {
  validate_grid(g);
  const Density2D h = perturbed(h0, g.perturbation);
  const auto series = tabulate_series(g, h, true);
  const std::size_t nt = g.t.size();
  return run_levels(
      "frac-hitting", g.x, g.t, g.step, g.levels,
      [&](std::size_t k, int level) {
        const double x = g.x[k / nt];
        const double t = g.t[k % nt];
        const double s = level_step(g.step, level);
        const std::size_t stride = std::size_t{1} << (g.levels - 1 - level);
        const std::size_t n = steps_to(t, s);
        const double frac = kSqrt2 * caputo_last(series[k], stride, n, s, 0.5);
        const double hx = d1(h, x, t, s, false);
        return PointResult{hx + frac, max_abs_of({hx, frac})};
      });
}

ResidualReport residual_frac_hitting(const ResidualGrid& grid, const NumericSpec& spec) {
  const HittingDensityEval eval{IGParams{1.0, 0.0}, spec, Prefactor::corrected, DensityRoute::automatic};
  const Density2D h = [eval](double x, double t) { return t > 0.0 ? hit_pdf_integral(x, t, eval) : 0.0; };
  return residual_frac_hitting(h, grid);
}

ResidualReport residual_frac_ig(const ResidualGrid& g, const NumericSpec&) {
  validate_grid(g);
  const Density2D gd = perturbed(
      [](double x, double t) { return x > 0.0 ? ig_pdf(x, IGMarginal{t, 0.0}) : 0.0; }, g.perturbation);
  const auto series = tabulate_series(g, gd, false);
  const std::size_t nt = g.t.size();
  return run_levels("frac-ig", g.x, g.t, g.step, g.levels, [&](std::size_t k, int level) {
    const double x = g.x[k / nt];
    const double t = g.t[k % nt];
    const double s = level_step(g.step, level);
    const std::size_t stride = std::size_t{1} << (g.levels - 1 - level);
    const std::size_t n = steps_to(x, s);
    const double frac = kSqrt2 * caputo_last(series[k], stride, n, s, 0.5);
    const double gt = d1(gd, x, t, s, true);
    return PointResult{gt + frac, max_abs_of({gt, frac})};
  });
}

ResidualReport residual_ts_pde(int n, double mu, const Density2D& m0, const ResidualGrid& g, TsSign sign) {
  validate_grid(g);
  if (n != 2 && n != 3) throw DomainError("tempered-stable check supports beta = 1/2 and 1/3 only");
  if (!(mu >= 0.0)) throw DomainError("tempering mu must be >= 0");
  const Density2D m = perturbed(m0, g.perturbation);
  const std::size_t nt = g.t.size();
  const double time_sign = sign == TsSign::as_printed ? -1.0 : 1.0;
  return run_levels(n == 2 ? "tempered-stable-2" : "tempered-stable-3", g.x, g.t, g.step, g.levels,
                    [&](std::size_t k, int level) {
                      const double x = g.x[k / nt];
                      const double t = g.t[k % nt];
                      const double s = level_step(g.step, level);
                      double lhs = 0.0;
                      double scale = 0.0;
                      for (int j = 1; j <= n; ++j) {
                        const double deriv = j == 1   ? d1(m, x, t, s, false)
                                             : j == 2 ? d2(m, x, t, s, false)
                                                      : d3x(m, x, t, s);
                        const double binom = std::tgamma(n + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(n - j + 1.0));
                        const double term = (j % 2 == 0 ? 1.0 : -1.0) * binom *
                                            std::pow(mu, 1.0 - static_cast<double>(j) / n) * deriv;
                        lhs += term;
                        scale = std::max(scale, std::fabs(term));
                      }
                      const double mt = d1(m, x, t, s, true);
                      return PointResult{lhs + time_sign * mt, std::max(scale, std::fabs(mt))};
                    });
}

ResidualReport residual_ts_pde(int n, double mu, const ResidualGrid& grid, const NumericSpec& spec, TsSign sign) {
  const auto model = SubordinatorModel::tempered_stable(1.0 / n, mu).with_spec(spec);
  const Density2D m = [model, spec](double x, double t) { return hit_pdf_convolution(x, t, model, spec); };
  return residual_ts_pde(n, mu, m, grid, sign);
}

ResidualReport residual_subordinated(const IGParams& p, const ResidualGrid& g, const NumericSpec& spec) {
  validate_grid(g);
  const SubordinatedEval eval{p, spec};
  const Density2D u =
      perturbed([eval](double x, double t) { return sub_pdf(x, t, eval); }, g.perturbation);
  const std::size_t nt = g.t.size();
  const double c = 2.0 * p.delta * p.delta;
  const double a = p.delta * p.gamma;
  return run_levels("subordinated", g.x, g.t, g.step, g.levels, [&](std::size_t k, int level) {
    const double x = g.x[k / nt];
    const double t = g.t[k % nt];
    const double s = level_step(g.step, level);
    const double ut = d1(u, x, t, s, true);
    const double u4 = d4x(u, x, t, s);
    const double u2 = d2(u, x, t, s, false);
    return PointResult{c * ut - 0.25 * u4 - a * u2, max_abs_of({c * ut, 0.25 * u4, a * u2})};
  });
}

ResidualReport residual_subordinated_frac(const ResidualGrid& g, const NumericSpec& spec) {
  validate_grid(g);
  const SubordinatedEval eval{IGParams{1.0, 0.0}, spec};
  const Density2D u = perturbed(
      [eval](double x, double t) { return t > 0.0 ? sub_pdf(x, t, eval) : 0.0; }, g.perturbation);
  const auto series = tabulate_series(g, u, true);
  const std::size_t nt = g.t.size();
  return run_levels("frac-subordinated", g.x, g.t, g.step, g.levels, [&](std::size_t k, int level) {
    const double x = g.x[k / nt];
    const double t = g.t[k % nt];
    const double s = level_step(g.step, level);
    const std::size_t stride = std::size_t{1} << (g.levels - 1 - level);
    const std::size_t n = steps_to(t, s);
    const double frac = kSqrt2 * caputo_last(series[k], stride, n, s, 0.5);
    const double uxx = 0.5 * d2(u, x, t, s, false);
    return PointResult{frac - uxx, max_abs_of({frac, uxx})};
  });
}

}  // namespace ighit
