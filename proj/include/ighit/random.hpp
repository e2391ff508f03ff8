#pragma once

#include <cstdint>
#include <random>

namespace ighit {

/// SplitMix64 step; advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of substream `stream` derived from a master seed.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Random source handed explicitly to every sampler. Variates are produced
/// from raw 64-bit engine output by hand so streams are bit-identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  double exponential();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace ighit
