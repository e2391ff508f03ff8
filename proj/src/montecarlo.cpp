#include "ighit/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "ighit/errors.hpp"
#include "ighit/parallel.hpp"

namespace ighit {

std::vector<double> draw_samples(const Sampler& sampler, long n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample count must be >= 1");
  const auto total = static_cast<std::size_t>(n);
  std::vector<double> out(total);
  parallel_for(kSampleChunks, [&](std::size_t k) {
    const std::size_t lo = total * k / kSampleChunks;
    const std::size_t hi = total * (k + 1) / kSampleChunks;
    Rng rng(seed, k);
    for (std::size_t i = lo; i < hi; ++i) out[i] = sampler(rng);
  });
  return out;
}

MCEstimate moment_of(const std::vector<double>& samples, double q, std::uint64_t seed) {
  if (samples.size() < 2) throw DomainError("moment estimate needs at least two samples");
  const bool integral = q == std::round(q);
  std::vector<double> v(samples.size());
  std::transform(samples.begin(), samples.end(), v.begin(),
                 [&](double x) { return integral ? std::pow(x, q) : std::pow(std::fabs(x), q); });
  double sum = 0.0;
  for (double x : v) sum += x;
  const double n = static_cast<double>(v.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  MCEstimate e;
  e.value = mean;
  e.std_error = std::sqrt(ss / (n - 1.0) / n);
  e.n_samples = static_cast<long>(v.size());
  e.seed = seed;
  return e;
}

MCEstimate estimate_moment(const Sampler& sampler, double q, long n, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  MCEstimate e = moment_of(draw_samples(sampler, n, seed), q, seed);
  e.elapsed = std::chrono::steady_clock::now() - start;
  return e;
}

double ecdf_ks(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("KS distance needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical_1pct(long n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

Histogram histogram_density(const std::vector<double>& samples, int bins, double lo, double hi) {
  if (bins < 10) throw DomainError("histogram needs at least 10 bins");
  if (samples.empty()) throw DomainError("histogram needs samples");
  if (!(hi > lo)) throw DomainError("histogram range must be nonempty");
  Histogram h;
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) h.edges.push_back(i == bins ? hi : lo + i * width);
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  long inside = 0;
  for (double x : samples) {
    if (x < lo || x > hi) continue;
    auto b = static_cast<long>((x - lo) / width);
    b = std::clamp<long>(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
    ++inside;
  }
  for (long c : h.counts) h.density.push_back(static_cast<double>(c) / (static_cast<double>(inside) * width));
  return h;
}

Histogram histogram_density(const std::vector<double>& samples, int bins) {
  if (samples.empty()) throw DomainError("histogram needs samples");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  const double hi = *mx > *mn ? *mx : *mn + 1.0;
  return histogram_density(samples, bins, *mn, hi);
}

}  // namespace ighit
