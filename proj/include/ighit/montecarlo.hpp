#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "ighit/random.hpp"

namespace ighit {

using Sampler = std::function<double(Rng&)>;

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  std::chrono::duration<double> elapsed{0.0};
};

/// Number of fixed substreams the samples are split over; chunk k always
/// uses Rng(seed, k), so results do not depend on the worker count.
inline constexpr std::size_t kSampleChunks = 64;

/// n draws in chunk order.
std::vector<double> draw_samples(const Sampler& sampler, long n, std::uint64_t seed);

/// Mean of X^q with standard error sample-sigma / sqrt(n). Non-integer q
/// uses |X|^q.
MCEstimate estimate_moment(const Sampler& sampler, double q, long n, std::uint64_t seed);
MCEstimate moment_of(const std::vector<double>& samples, double q, std::uint64_t seed = 0);

/// sup_x |ECDF(x) - F(x)|.
double ecdf_ks(std::vector<double> samples, const std::function<double(double)>& cdf);
/// Asymptotic 1% critical value 1.628 / sqrt(n).
double ks_critical_1pct(long n);

struct Histogram {
  std::vector<double> edges;
  std::vector<double> density;
  std::vector<long> counts;
};

/// Equal-width bins over [min, max] of the samples, normalized to unit area.
Histogram histogram_density(const std::vector<double>& samples, int bins);
Histogram histogram_density(const std::vector<double>& samples, int bins, double lo, double hi);

}  // namespace ighit
