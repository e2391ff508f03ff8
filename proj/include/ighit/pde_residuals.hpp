#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ighit/inverse_process.hpp"
#include "ighit/numeric_spec.hpp"
#include "ighit/subordinators.hpp"

namespace ighit {

/// f(x, t) tabulated by a residual check.
using Density2D = std::function<double(double x, double t)>;

/// Caputo derivative of order alpha by the L1 scheme on a uniform grid that
/// starts at times[0]. Entry 0 of the result is 0.
std::vector<double> caputo_derivative(const std::vector<double>& times, const std::vector<double>& values,
                                      double alpha);

/// Residuals are evaluated at every (x[i], t[j]) with stencil steps
/// step, step / 2, ... (`levels` resolutions). A nonzero perturbation
/// multiplies the density by (1 + perturbation * x) as a negative control.
struct ResidualGrid {
  std::vector<double> x;
  std::vector<double> t;
  double step = 1.0 / 32.0;
  int levels = 3;
  double perturbation = 0.0;
};

struct ResidualLevel {
  double step_x = 0.0;
  double step_t = 0.0;
  /// Row-major over (x, t): index i * t.size() + j.
  std::vector<double> residuals;
  double max_abs = 0.0;
  double rms = 0.0;
  /// Largest magnitude of any single operator term over the grid.
  double scale = 0.0;
};

struct ResidualReport {
  std::string equation;
  std::vector<double> x;
  std::vector<double> t;
  std::vector<ResidualLevel> levels;
  /// max_abs of the second-finest level over that of the finest.
  double refinement_ratio = 0.0;
  /// log2 of refinement_ratio; the scheme order under step halving.
  double observed_order = 0.0;

  const ResidualLevel& finest() const { return levels.back(); }
  double relative_residual() const { return finest().max_abs / finest().scale; }
};

/// h_xx - 2 delta gamma h_x - 2 delta^2 h_t for the hitting-time density.
ResidualReport residual_hitting_pde(const HittingDensityEval& eval, const ResidualGrid& grid);
ResidualReport residual_hitting_pde(const IGParams& p, const Density2D& h, const ResidualGrid& grid);

/// g_tt - 2 delta gamma g_t - 2 delta^2 g_x for the density of G(t) at x.
ResidualReport residual_ig_pde(const IGParams& p, const ResidualGrid& grid, const NumericSpec& spec = {});

/// d/dx h~(x, s) + Psi(s) h~(x, s) for the time transform h~.
enum class TransformSource { closed_form, numerical };
ResidualReport residual_pseudo_lt(const IGParams& p, const std::vector<double>& s_grid,
                                  const std::vector<double>& x_grid, TransformSource source,
                                  const NumericSpec& spec = {}, double step = 1.0 / 16.0, int levels = 3,
                                  double perturbation = 0.0);

/// h_x + sqrt(2) D_t^{1/2} h for delta = 1, gamma = 0.
ResidualReport residual_frac_hitting(const ResidualGrid& grid, const NumericSpec& spec = {});
ResidualReport residual_frac_hitting(const Density2D& h, const ResidualGrid& grid);
/// g_t + sqrt(2) D_x^{1/2} g for the driftless IG density with delta = 1.
ResidualReport residual_frac_ig(const ResidualGrid& grid, const NumericSpec& spec = {});

/// Sign placement of the time derivative in the tempered-stable equation.
/// `as_printed` is sum_j (-1)^j C(n, j) mu^{1 - j/n} d^j_x m = d_t m;
/// `flipped` moves d_t m to the other side.
enum class TsSign { as_printed, flipped };
/// n = 2 or 3 (beta = 1/n); density from the convolution route.
ResidualReport residual_ts_pde(int n, double mu, const ResidualGrid& grid, const NumericSpec& spec = {},
                               TsSign sign = TsSign::as_printed);
ResidualReport residual_ts_pde(int n, double mu, const Density2D& m, const ResidualGrid& grid,
                               TsSign sign = TsSign::as_printed);

/// 2 delta^2 u_t - (u_xxxx / 4 + delta gamma u_xx) for X(t) = B(H(t)).
ResidualReport residual_subordinated(const IGParams& p, const ResidualGrid& grid, const NumericSpec& spec = {});
/// sqrt(2) D_t^{1/2} u - u_xx / 2 for delta = 1, gamma = 0.
ResidualReport residual_subordinated_frac(const ResidualGrid& grid, const NumericSpec& spec = {});

}  // namespace ighit
