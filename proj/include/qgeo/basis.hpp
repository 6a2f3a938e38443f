#pragma once

#include <cstddef>
#include <vector>

#include "qgeo/matrix.hpp"

namespace qgeo {

// Orthonormal Hermitian operator basis {G_0, ..., G_{d^2-1}} with
// tr(G_a G_b) = delta_ab. Element 0 is I/sqrt(d); the rest are
// generalized Gell-Mann matrices ordered: symmetric pairs (i<j,
// lexicographic), antisymmetric pairs (same order), then the d-1
// diagonal traceless elements.
class HermitianBasis {
 public:
  static HermitianBasis standard(std::size_t d);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const ComplexMatrix& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  bool is_standard() const { return standard_; }

 private:
  HermitianBasis(std::size_t d, std::vector<ComplexMatrix> els, bool standard)
      : dim_(d), elements_(std::move(els)), standard_(standard) {}

  std::size_t dim_;
  std::vector<ComplexMatrix> elements_;
  bool standard_;
};

HermitianBasis hermitian_basis(std::size_t d);

// coords_a = tr(G_a W); a linear isometry (Hermitian, HS) -> (R^{d^2}, l2).
std::vector<double> vectorize(const ComplexMatrix& a, const HermitianBasis& basis);
ComplexMatrix devectorize(const std::vector<double>& coords,
                          const HermitianBasis& basis);

}  // namespace qgeo
