#include "qgeo/basis.hpp"

#include <cmath>

#include "qgeo/errors.hpp"

namespace qgeo {

namespace {
constexpr cplx kI{0.0, 1.0};
const double kSqrt1_2 = std::sqrt(0.5);
}  // namespace

HermitianBasis HermitianBasis::standard(std::size_t d) {
  if (d == 0) fail("shape", "basis dimension must be positive");
  std::vector<ComplexMatrix> els;
  els.reserve(d * d);

  ComplexMatrix id = ComplexMatrix::identity(d);
  id *= 1.0 / std::sqrt(static_cast<double>(d));
  els.push_back(std::move(id));

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      ComplexMatrix s(d, d);
      s(i, j) = kSqrt1_2;
      s(j, i) = kSqrt1_2;
      els.push_back(std::move(s));
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      ComplexMatrix a(d, d);
      a(i, j) = -kI * kSqrt1_2;
      a(j, i) = kI * kSqrt1_2;
      els.push_back(std::move(a));
    }
  for (std::size_t k = 1; k < d; ++k) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    ComplexMatrix g(d, d);
    for (std::size_t m = 0; m < k; ++m) g(m, m) = norm;
    g(k, k) = -static_cast<double>(k) * norm;
    els.push_back(std::move(g));
  }

  return HermitianBasis(d, std::move(els), true);
}

HermitianBasis hermitian_basis(std::size_t d) { return HermitianBasis::standard(d); }

std::vector<double> vectorize(const ComplexMatrix& a, const HermitianBasis& basis) {
  const std::size_t d = basis.dim();
  if (a.rows() != d || a.cols() != d) fail("shape", "matrix does not match basis");
  require_hermitian(a);

  std::vector<double> coords;
  coords.reserve(d * d);
  if (basis.is_standard()) {
    double tr = 0.0;
    for (std::size_t i = 0; i < d; ++i) tr += a(i, i).real();
    coords.push_back(tr / std::sqrt(static_cast<double>(d)));
    const double sqrt2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        coords.push_back(sqrt2 * a(i, j).real());
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        coords.push_back(-sqrt2 * a(i, j).imag());
    for (std::size_t k = 1; k < d; ++k) {
      const double norm = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
      double acc = 0.0;
      for (std::size_t m = 0; m < k; ++m) acc += a(m, m).real();
      acc -= static_cast<double>(k) * a(k, k).real();
      coords.push_back(acc * norm);
    }
  } else {
    for (const auto& g : basis.elements()) coords.push_back(hs_inner(g, a));
  }
  return coords;
}

ComplexMatrix devectorize(const std::vector<double>& coords,
                          const HermitianBasis& basis) {
  const std::size_t d = basis.dim();
  if (coords.size() != d * d) fail("shape", "coordinate count does not match basis");

  ComplexMatrix a(d, d);
  if (basis.is_standard()) {
    const double trace_part = coords[0] / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) a(i, i) = trace_part;
    std::size_t idx = 1;
    const std::size_t pairs = d * (d - 1) / 2;
    std::size_t pair = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j, ++pair) {
        const double re = coords[idx + pair] * kSqrt1_2;
        const double im = -coords[idx + pairs + pair] * kSqrt1_2;
        a(i, j) = cplx{re, im};
        a(j, i) = cplx{re, -im};
      }
    idx += 2 * pairs;
    for (std::size_t k = 1; k < d; ++k) {
      const double norm = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
      const double c = coords[idx + k - 1] * norm;
      for (std::size_t m = 0; m < k; ++m) a(m, m) += c;
      a(k, k) -= static_cast<double>(k) * c;
    }
  } else {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      ComplexMatrix term = basis.element(i);
      term *= coords[i];
      a += term;
    }
  }
  return a;
}

}  // namespace qgeo
