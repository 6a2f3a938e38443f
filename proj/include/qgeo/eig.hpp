#pragma once

#include <vector>

#include "qgeo/matrix.hpp"

namespace qgeo {

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending; eigenvectors are the matching columns, each with its first
/// significant component made real and positive so results are reproducible.
struct EighResult {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;  // column k pairs with eigenvalues[k]

  CVector eigenvector(std::size_t k) const;
};

/// Cyclic complex Jacobi; input must be Hermitian within `herm_tol`.
EighResult eigh(const ComplexMatrix& a, double herm_tol = 1e-10);

double min_eigenvalue(const ComplexMatrix& a, double herm_tol = 1e-10);

/// Positive semidefiniteness at tolerance: min eigenvalue >= -tol * dim.
bool is_psd(const ComplexMatrix& a, double tol = 1e-9);

/// Thin singular value decomposition a = u diag(s) v^dagger by one-sided
/// Jacobi. Singular values are sorted descending; rank-deficient directions
/// get deterministically completed u columns. Phase convention as in eigh.
struct SvdResult {
  ComplexMatrix u;                      // rows(a) x min_dim
  std::vector<double> singular_values;  // min_dim, descending
  ComplexMatrix v;                      // cols(a) x min_dim
};

SvdResult svd(const ComplexMatrix& a);

/// a = unitary * positive with positive = sqrt(a^dagger a).
/// For singular a the unitary factor is completed deterministically.
struct PolarResult {
  ComplexMatrix unitary;
  ComplexMatrix positive;
};

PolarResult polar_decompose(const ComplexMatrix& a);

/// Make the first component of v with magnitude above `threshold` real and
/// positive (the shared sign convention for eigenvectors and singular
/// vectors). Returns the applied phase factor.
cplx fix_phase(CVector& v, double threshold = 1e-10);

}  // namespace qgeo
