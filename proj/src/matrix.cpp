#include "qgeo/matrix.hpp"

#include <cmath>
#include <utility>

#include "qgeo/errors.hpp"
#include "qgeo/kernels.hpp"

namespace qgeo {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail("shape", "matrix shapes differ");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    fail("shape", "entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  kernels::caxpy(size(), 1.0, other.data(), data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  kernels::caxpy(size(), -1.0, other.data(), data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(double scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) fail("shape", "trace of non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix operator*(double s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) fail("shape", "matmul dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  kernels::cmatmul_acc(a.rows(), a.cols(), b.cols(), a.data(), b.data(),
                       c.data());
  return c;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.is_square()) fail("shape", "hermiticity of non-square matrix");
  double defect = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      defect = std::max(defect, std::abs(a(i, j) - std::conj(a(j, i))));
  return defect;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.is_square() &&
         hermiticity_defect(a) <= tol * std::max(1.0, a.max_abs());
}

void require_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) fail("shape", "expected a square matrix");
  if (!is_hermitian(a, tol)) fail("not-hermitian", "matrix is not Hermitian");
}

cplx hs_inner_complex(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  // tr(a^dagger b) = sum_ij conj(a_ij) b_ij
  return kernels::cdotc(a.size(), a.data(), b.data());
}

double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square()) fail("shape", "expected square matrices");
  require_same_shape(a, b);
  require_hermitian(a);
  require_hermitian(b);
  return kernels::cdotc(a.size(), a.data(), b.data()).real();
}

double hs_norm(const ComplexMatrix& a) {
  return std::sqrt(
      std::max(0.0, kernels::cdotc(a.size(), a.data(), a.data()).real()));
}

double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  return hs_norm(a - b);
}

double vec_norm(const CVector& v) {
  return std::sqrt(
      std::max(0.0, kernels::cdotc(v.size(), v.data(), v.data()).real()));
}

cplx vec_inner(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) fail("shape", "vector lengths differ");
  return kernels::cdotc(x.size(), x.data(), y.data());
}

CVector normalized(CVector v) {
  const double n = vec_norm(v);
  if (n <= 1e-12) fail("degenerate", "cannot normalize a (near-)zero vector");
  for (auto& z : v) z /= n;
  return v;
}

ComplexMatrix outer(const CVector& v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

CVector matvec(const ComplexMatrix& a, const CVector& x) {
  if (a.cols() != x.size()) fail("shape", "matvec dimension mismatch");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    y[i] = kernels::cdotu(a.cols(), a.data() + i * a.cols(), x.data());
  return y;
}

double quad_form(const ComplexMatrix& m, const CVector& v) {
  const CVector mv = matvec(m, v);
  return kernels::cdotc(v.size(), v.data(), mv.data()).real();
}

}  // namespace qgeo
