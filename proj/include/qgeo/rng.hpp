#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace qgeo {

/// Seeded, splittable pseudo-random generator.
///
/// Every stochastic operation in the library takes an Rng explicitly; there
/// is no hidden global state. `split(k)` derives an independent stream from
/// the generator's base seed and the stream index only — it does not depend
/// on how many values have been drawn — so sharded Monte Carlo runs produce
/// the same totals for any worker count.
///
/// Gaussian variates use an explicit Box-Muller transform on 53-bit uniforms,
/// so output depends only on std::mt19937_64 (bit-exact per the standard)
/// and IEEE double arithmetic.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Standard normal variate.
  double gaussian();

  /// Complex Gaussian with unit variance: (g1 + i g2) / sqrt(2).
  std::complex<double> complex_gaussian();

  /// Independent child stream derived from (seed, stream).
  Rng split(std::uint64_t stream) const;

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

/// SplitMix64 mixing step; used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qgeo
