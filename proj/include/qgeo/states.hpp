#pragma once

#include <cstddef>
#include <vector>

#include "qgeo/matrix.hpp"
#include "qgeo/rng.hpp"

namespace qgeo {

// Unit-trace positive-semidefinite Hermitian matrix; validated on construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

// Rank-1 projector |v><v| onto a normalized ray. The stored vector carries a
// canonical global phase (first significant component real-positive).
class RayProjector {
 public:
  explicit RayProjector(CVector v);

  std::size_t dim() const { return vector_.size(); }
  const CVector& vector() const { return vector_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  CVector vector_;
  ComplexMatrix matrix_;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // descending
  std::vector<RayProjector> projectors;
};

DensityMatrix maximally_mixed(std::size_t d);
RayProjector pure_state(const CVector& v);
SpectralDecomposition spectral(const DensityMatrix& w);

// W = G G^dagger / tr(G G^dagger) with G a d x d standard complex Ginibre
// matrix; this is the Hilbert-Schmidt measure on density matrices.
DensityMatrix random_density_hs(std::size_t d, Rng& rng);
RayProjector random_pure(std::size_t d, Rng& rng);

double purity(const DensityMatrix& w);

}  // namespace qgeo
