#include "qgeo/rng.hpp"

#include <cmath>
#include <numbers>

namespace qgeo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  // open-interval uniforms keep log() finite
  const double u1 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = r * std::sin(phi);
  has_cached_gaussian_ = true;
  return r * std::cos(phi);
}

std::complex<double> Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ + 0x9E3779B97F4A7C15ULL * (stream + 1)));
}

}  // namespace qgeo
