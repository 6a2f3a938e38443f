#include "qgeo/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgeo/eig.hpp"
#include "qgeo/errors.hpp"
#include "qgeo/kernels.hpp"

namespace qgeo {

namespace {

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    acc += std::max(p[k], 0.0);
    cdf[k] = acc;
  }
  return cdf;
}

std::size_t draw(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform01() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const std::size_t k = static_cast<std::size_t>(it - cdf.begin());
  return std::min(k, cdf.size() - 1);
}

}  // namespace

OutcomeCounts sample_outcomes(const RayResolution& m, const DensityMatrix& w,
                              std::uint64_t n, Rng& rng) {
  if (n == 0) fail("range", "need at least one shot");
  const auto cdf = cumulative(probabilities(m, w));
  std::vector<std::uint64_t> counts(m.size(), 0);
  for (std::uint64_t shot = 0; shot < n; ++shot) ++counts[draw(cdf, rng)];
  return {m, std::move(counts), n};
}

ComplexMatrix empirical_state(const OutcomeCounts& counts) {
  if (counts.total == 0) fail("range", "empty ensemble");
  if (counts.counts.size() != counts.resolution.size())
    fail("shape", "count vector does not match the resolution");
  const std::size_t d = counts.resolution.dim();
  ComplexMatrix acc(d, d);
  const double n = static_cast<double>(counts.total);
  for (std::size_t k = 0; k < counts.counts.size(); ++k) {
    const double f = static_cast<double>(counts.counts[k]) / n;
    if (f == 0.0) continue;
    kernels::caxpy(d * d, cplx{f, 0.0},
                   counts.resolution.projector(k).matrix().data(), acc.data());
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const cplx z = 0.5 * (acc(i, j) + std::conj(acc(j, i)));
      acc(i, j) = z;
      acc(j, i) = std::conj(z);
    }
  return acc;
}

EntryRecord first_entry_time(const RayResolution& m, const DensityMatrix& w,
                             Rng& rng, std::uint64_t max_n, std::uint64_t step,
                             double tol) {
  if (step == 0 || max_n < step) fail("range", "need max_n >= step >= 1");
  const std::size_t d = m.dim();
  const std::size_t side = d * d;
  if (m.size() != side)
    fail("not-informationally-complete",
         "entry times need an informationally complete resolution");

  // precompute the channel pseudo-inverse once; per-check cost is one
  // matrix-vector product plus a d x d eigenvalue pass
  const TransferMatrix& t = m.transfer();
  ComplexMatrix tc(side, side);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) tc(i, j) = t(i, j);
  const SvdResult s = svd(tc);
  if (!(s.singular_values.back() > 0.0) ||
      s.singular_values.front() / s.singular_values.back() > 1e12)
    fail("not-informationally-complete", "transfer matrix is singular");
  std::vector<double> inverse(side * side, 0.0);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < side; ++k)
        acc += (s.v(i, k) * std::conj(s.u(j, k))).real() / s.singular_values[k];
      inverse[i * side + j] = acc;
    }

  const HermitianBasis& basis = t.basis;
  std::vector<std::vector<double>> proj_coords;
  proj_coords.reserve(m.size());
  for (std::size_t k = 0; k < m.size(); ++k)
    proj_coords.push_back(vectorize(m.projector(k).matrix(), basis));

  const auto cdf = cumulative(probabilities(m, w));
  std::vector<std::uint64_t> counts(m.size(), 0);

  EntryRecord record{rng.seed(), false, false, 0, 0,
                     std::numeric_limits<double>::quiet_NaN()};
  std::vector<double> emp(side, 0.0), pre(side, 0.0);
  for (std::uint64_t shot = 1; shot <= max_n; ++shot) {
    ++counts[draw(cdf, rng)];
    if (shot % step != 0) continue;

    std::fill(emp.begin(), emp.end(), 0.0);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const double f =
          static_cast<double>(counts[k]) / static_cast<double>(shot);
      if (f != 0.0) kernels::raxpy(side, f, proj_coords[k].data(), emp.data());
    }
    kernels::rgemv(side, side, inverse.data(), emp.data(), pre.data());
    const double lambda = min_eigenvalue(devectorize(pre, basis));
    record.min_eig_final = lambda;

    if (!record.touched && lambda >= -tol) {
      record.touched = true;
      record.n_touch = shot;
    }
    if (lambda > tol) {
      record.entered = true;
      record.n_entry = shot;
      break;
    }
  }
  return record;
}

bool tomography_consistent(const TomographyPair& p) {
  if (p.a < 0.0 || p.a > 1.0) fail("range", "a must lie in [0, 1]");
  if (std::abs(p.b) > 0.5) fail("range", "b must lie in [-1/2, 1/2]");
  return p.b * p.b <= p.a * (1.0 - p.a) + 1e-12;
}

std::pair<double, double> consistency_interval(double a) {
  if (a < 0.0 || a > 1.0) fail("range", "a must lie in [0, 1]");
  const double r = std::sqrt(a * (1.0 - a));
  return {-r, r};
}

}  // namespace qgeo
