#include "qgeo/states.hpp"

#include <cmath>
#include <utility>

#include "qgeo/eig.hpp"
#include "qgeo/errors.hpp"

namespace qgeo {

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  if (!matrix_.is_square() || matrix_.rows() == 0)
    fail("shape", "density matrix must be square");
  require_hermitian(matrix_);
  const cplx tr = matrix_.trace();
  if (std::abs(tr - 1.0) > 1e-10) fail("trace", "density matrix trace != 1");
  if (!is_psd(matrix_)) fail("not-psd", "density matrix has a negative eigenvalue");
}

RayProjector::RayProjector(CVector v) : vector_(normalized(std::move(v))) {
  fix_phase(vector_);
  matrix_ = outer(vector_);
}

DensityMatrix maximally_mixed(std::size_t d) {
  if (d < 2) fail("dimension", "need dimension >= 2");
  ComplexMatrix m = ComplexMatrix::identity(d);
  m *= 1.0 / static_cast<double>(d);
  return DensityMatrix(std::move(m));
}

RayProjector pure_state(const CVector& v) { return RayProjector(v); }

SpectralDecomposition spectral(const DensityMatrix& w) {
  const EighResult e = eigh(w.matrix());
  SpectralDecomposition out;
  out.eigenvalues = e.eigenvalues;
  out.projectors.reserve(e.eigenvalues.size());
  for (std::size_t k = 0; k < e.eigenvalues.size(); ++k)
    out.projectors.emplace_back(e.eigenvector(k));
  return out;
}

DensityMatrix random_density_hs(std::size_t d, Rng& rng) {
  if (d < 2) fail("dimension", "need dimension >= 2");
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
  ComplexMatrix w = g * g.adjoint();
  w *= 1.0 / w.trace().real();
  // symmetrize away rounding before validation
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const cplx z = 0.5 * (w(i, j) + std::conj(w(j, i)));
      w(i, j) = z;
      w(j, i) = std::conj(z);
    }
  return DensityMatrix(std::move(w));
}

RayProjector random_pure(std::size_t d, Rng& rng) {
  if (d < 2) fail("dimension", "need dimension >= 2");
  CVector v(d);
  for (auto& z : v) z = rng.complex_gaussian();
  return RayProjector(std::move(v));
}

double purity(const DensityMatrix& w) {
  const double n = hs_norm(w.matrix());
  return n * n;
}

}  // namespace qgeo
