#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qgeo/matrix.hpp"
#include "qgeo/resolution.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/states.hpp"

namespace qgeo {

struct OutcomeCounts {
  RayResolution resolution;
  std::vector<std::uint64_t> counts;  // one per outcome
  std::uint64_t total;
};

struct TomographyPair {
  double a;  // S_z distribution {1-a, a}
  double b;  // S_x distribution {1/2+b, 1/2-b}
};

struct EntryRecord {
  std::uint64_t seed;       // reconstructs this exact trajectory
  bool touched;             // preimage min eigenvalue reached [-tol, tol]
  bool entered;             // preimage min eigenvalue exceeded +tol
  std::uint64_t n_touch;    // smallest tested N; 0 when never
  std::uint64_t n_entry;    // smallest tested N; 0 when never
  double min_eig_final;     // preimage min eigenvalue at the last test
};

OutcomeCounts sample_outcomes(const RayResolution& m, const DensityMatrix& w,
                              std::uint64_t n, Rng& rng);

// sum_k (n_k / N) Q_k: unit-trace and Hermitian, but generally not the image
// of any state, which is the whole point of tracking it
ComplexMatrix empirical_state(const OutcomeCounts& counts);

EntryRecord first_entry_time(const RayResolution& m, const DensityMatrix& w,
                             Rng& rng, std::uint64_t max_n, std::uint64_t step = 1,
                             double tol = 1e-9);

bool tomography_consistent(const TomographyPair& p);
std::pair<double, double> consistency_interval(double a);

}  // namespace qgeo
