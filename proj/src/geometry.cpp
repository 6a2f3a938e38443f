#include "qgeo/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qgeo/eig.hpp"
#include "qgeo/errors.hpp"

namespace qgeo {

namespace {

double log_simplex_volume_impl(std::size_t d) {
  const double dd = static_cast<double>(d);
  const double m = dd * dd - 1.0;
  // s^m * d / (m! * 2^(m/2)) with s^2 = 2d/(d+1); the 2s cancel to d/(d+1)
  return 0.5 * m * std::log(dd / (dd + 1.0)) + std::log(dd) -
         std::lgamma(dd * dd);
}

double log_state_volume_impl(std::size_t d) {
  const double dd = static_cast<double>(d);
  double acc = 0.5 * std::log(dd);
  acc += 0.5 * dd * (dd - 1.0) * std::log(2.0 * std::numbers::pi);
  for (std::size_t k = 1; k <= d; ++k)
    acc += std::lgamma(static_cast<double>(k));
  acc -= std::lgamma(dd * dd);
  return acc;
}

double log_vam_volume_impl(std::size_t d) {
  const double dd = static_cast<double>(d);
  return log_state_volume_impl(d) - (dd * dd - 1.0) * std::log(dd + 1.0);
}

void require_dim(std::size_t d) {
  if (d < 2) fail("dimension", "need dimension >= 2");
}

}  // namespace

double simplex_volume(std::size_t d) {
  require_dim(d);
  return std::exp(log_simplex_volume_impl(d));
}

double state_space_volume(std::size_t d) {
  require_dim(d);
  return std::exp(log_state_volume_impl(d));
}

double v_am_volume(std::size_t d) {
  require_dim(d);
  return std::exp(log_vam_volume_impl(d));
}

VolumeReport volume_report(std::size_t d) {
  require_dim(d);
  const double ls = log_simplex_volume_impl(d);
  const double lw = log_state_volume_impl(d);
  const double lv = log_vam_volume_impl(d);
  return {d,
          std::exp(ls),
          std::exp(lw),
          std::exp(lv),
          ls,
          lw,
          lv,
          std::exp(ls - lw),
          std::exp(lv - ls),
          std::exp(lv - lw)};
}

MembershipVerdict membership(const RayResolution& m, const DensityMatrix& w,
                             double tol) {
  const std::size_t d = m.dim();
  if (w.dim() != d) fail("shape", "state dimension != resolution dimension");
  const std::size_t n = m.size();
  const std::size_t side = d * d;

  const HermitianBasis basis = HermitianBasis::standard(d);
  ComplexMatrix coords(side, n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto col = vectorize(m.projector(k).matrix(), basis);
    for (std::size_t a = 0; a < side; ++a) coords(a, k) = col[a];
  }
  const auto b = vectorize(w.matrix(), basis);

  const SvdResult s = svd(coords);
  std::size_t span_dim = 0;
  for (const double sigma : s.singular_values)
    if (sigma > 1e-10) ++span_dim;

  // least-squares coefficients a = V sigma^+ U^dagger b
  std::vector<double> a(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (s.singular_values[k] <= 1e-10) continue;
    cplx ub = 0.0;
    for (std::size_t i = 0; i < side; ++i) ub += std::conj(s.u(i, k)) * b[i];
    ub /= s.singular_values[k];
    for (std::size_t j = 0; j < n; ++j) a[j] += (s.v(j, k) * ub).real();
  }

  double residual = 0.0;
  {
    std::vector<double> recon(side, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < side; ++i)
        recon[i] += coords(i, j).real() * a[j];
    for (std::size_t i = 0; i < side; ++i) {
      const double diff = recon[i] - b[i];
      residual += diff * diff;
    }
    residual = std::sqrt(residual);
  }

  double sum = 0.0, min_coeff = std::numeric_limits<double>::infinity();
  for (const double x : a) {
    sum += x;
    min_coeff = std::min(min_coeff, x);
  }

  MembershipVerdict verdict;
  verdict.coefficients = std::move(a);
  verdict.residual = residual;
  verdict.coefficient_sum = sum;
  verdict.min_coefficient = min_coeff;
  verdict.span_dimension = span_dim;
  verdict.in_linear_span =
      residual <= tol * static_cast<double>(d) && std::abs(sum - 1.0) <= tol;
  verdict.in_conv = verdict.in_linear_span && min_coeff >= -tol;

  verdict.min_preimage_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  if (n != side) {
    verdict.v_am_decided = false;
    verdict.in_v_am = false;
    verdict.v_am_reason = "resolution is not informationally complete";
  } else {
    try {
      const ChannelInversion inv = invert_channel(m, w);
      verdict.v_am_decided = true;
      verdict.min_preimage_eigenvalue = inv.min_eigenvalue;
      verdict.in_v_am =
          inv.min_eigenvalue >= -tol * static_cast<double>(d);
      verdict.v_am_reason = "";
    } catch (const Error& e) {
      verdict.v_am_decided = false;
      verdict.in_v_am = false;
      verdict.v_am_reason = e.what();
    }
  }

  // verdict-level chain: V_am subset of conv subset of span
  verdict.in_conv = verdict.in_conv && verdict.in_linear_span;
  verdict.in_v_am = verdict.in_v_am && verdict.in_conv;
  return verdict;
}

McEstimate mc_fraction(const std::function<bool(const DensityMatrix&)>& predicate,
                       std::size_t d, std::size_t n, const Rng& rng) {
  require_dim(d);
  constexpr std::size_t kBlock = 4096;
  std::size_t hits = 0;
  std::size_t done = 0;
  for (std::size_t block = 0; done < n; ++block) {
    Rng stream = rng.split(block);
    const std::size_t take = std::min(kBlock, n - done);
    for (std::size_t i = 0; i < take; ++i)
      if (predicate(random_density_hs(d, stream))) ++hits;
    done += take;
  }
  const double p = n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n);
  const double se =
      n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {p, se, hits, n, "hilbert-schmidt"};
}

DensityMatrix project_to_orri_simplex(const RayResolution& orri,
                                      const DensityMatrix& w) {
  if (orri.kind() != ResolutionKind::orri)
    fail("not-orri", "simplex projection requires an ORRI");
  return apply_channel(orri, w);
}

}  // namespace qgeo
