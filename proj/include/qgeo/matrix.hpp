#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qgeo {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense complex matrix, row-major contiguous storage.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);
  ComplexMatrix& operator*=(double scalar);

  cplx trace() const;
  double max_abs() const;
  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(double s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry of |a - a^dagger|.
double hermiticity_defect(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);
void require_hermitian(const ComplexMatrix& a, double tol = 1e-10);

/// tr(a^dagger b) for arbitrary equal-shape matrices.
cplx hs_inner_complex(const ComplexMatrix& a, const ComplexMatrix& b);

/// tr(a^dagger b) as a real number; requires both inputs Hermitian.
double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Frobenius / Hilbert-Schmidt norm.
double hs_norm(const ComplexMatrix& a);

/// HS distance sqrt(tr((a-b)^dagger (a-b))).
double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// vector helpers
double vec_norm(const CVector& v);
cplx vec_inner(const CVector& x, const CVector& y);  // conjugates x
CVector normalized(CVector v);
ComplexMatrix outer(const CVector& v);               // |v><v|
CVector matvec(const ComplexMatrix& a, const CVector& x);

/// <v| M |v> for Hermitian M (real part; the imaginary part is rounding).
double quad_form(const ComplexMatrix& m, const CVector& v);

}  // namespace qgeo
