#pragma once

#include "ighit/inverse_process.hpp"
#include "ighit/numeric_spec.hpp"
#include "ighit/random.hpp"
#include "ighit/subordinators.hpp"

namespace ighit {

/// Brownian motion run on the hitting-time clock, X(t) = B(H(t)).
struct SubordinatedEval {
  IGParams params{};
  NumericSpec spec{};
};

/// u(x, t) = int_0^inf (2 pi r)^{-1/2} e^{-x^2 / (2r)} h(r, t) dr, with r = v^2.
double sub_pdf(double x, double t, const SubordinatedEval& eval);

/// X(t) on the grid 0, dt, ..., T. B is independent of G and is advanced by
/// N(0, dH) increments, so X is exactly flat wherever H is.
SamplePath sub_sample_path(const IGParams& p, double horizon, double dt, Rng& rng);

/// One draw of X(t) = sqrt(H(t)) N with H(t) from a grid path of step dt.
double sample_subordinated(const IGParams& p, double t, double dt, Rng& rng);

}  // namespace ighit
