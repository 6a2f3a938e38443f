#pragma once

#include <complex>
#include <cstddef>

namespace qgeo::kernels {

using cplx = std::complex<double>;

/// The arithmetic inner loops of the library. Each kernel has a scalar
/// reference implementation and, on x86-64, an AVX2+FMA variant selected at
/// runtime. The two variants are equivalence-tested against each other; they
/// may differ by floating-point reassociation only.
struct Ops {
  // sum conj(x_i) * y_i
  cplx (*cdotc)(std::size_t n, const cplx* x, const cplx* y);
  // sum x_i * y_i
  cplx (*cdotu)(std::size_t n, const cplx* x, const cplx* y);
  // y += alpha * x
  void (*caxpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  // sum x_i * y_i
  double (*rdot)(std::size_t n, const double* x, const double* y);
  // y += alpha * x
  void (*raxpy)(std::size_t n, double alpha, const double* x, double* y);
  // y = A x, A row-major m x n
  void (*rgemv)(std::size_t m, std::size_t n, const double* a, const double* x,
                double* y);
  // C += A B with A m x k, B k x n, C m x n, all row-major
  void (*cmatmul_acc)(std::size_t m, std::size_t k, std::size_t n,
                      const cplx* a, const cplx* b, cplx* c);
};

enum class Backend { scalar, avx2 };

/// True when the AVX2 variant was compiled in and the CPU supports AVX2+FMA.
bool avx2_available();

/// Active kernel table. Defaults to the best available backend; the
/// QGEO_KERNELS environment variable ("scalar", "avx2", "auto") overrides.
const Ops& active();
Backend active_backend();
const char* backend_name();

/// Force a backend (throws Error "kernel-backend" if unavailable).
/// Not safe to call while kernels run on other threads.
void set_backend(Backend b);
/// Return to automatic selection.
void reset_backend();

const Ops& table(Backend b);

namespace scalar {
cplx cdotc(std::size_t n, const cplx* x, const cplx* y);
cplx cdotu(std::size_t n, const cplx* x, const cplx* y);
void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
double rdot(std::size_t n, const double* x, const double* y);
void raxpy(std::size_t n, double alpha, const double* x, double* y);
void rgemv(std::size_t m, std::size_t n, const double* a, const double* x,
           double* y);
void cmatmul_acc(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                 const cplx* b, cplx* c);
}  // namespace scalar

#if defined(QGEO_HAVE_AVX2)
namespace avx2 {
cplx cdotc(std::size_t n, const cplx* x, const cplx* y);
cplx cdotu(std::size_t n, const cplx* x, const cplx* y);
void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
double rdot(std::size_t n, const double* x, const double* y);
void raxpy(std::size_t n, double alpha, const double* x, double* y);
void rgemv(std::size_t m, std::size_t n, const double* a, const double* x,
           double* y);
void cmatmul_acc(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                 const cplx* b, cplx* c);
}  // namespace avx2
#endif

// Convenience wrappers through the active table.
inline cplx cdotc(std::size_t n, const cplx* x, const cplx* y) {
  return active().cdotc(n, x, y);
}
inline cplx cdotu(std::size_t n, const cplx* x, const cplx* y) {
  return active().cdotu(n, x, y);
}
inline void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  active().caxpy(n, alpha, x, y);
}
inline double rdot(std::size_t n, const double* x, const double* y) {
  return active().rdot(n, x, y);
}
inline void raxpy(std::size_t n, double alpha, const double* x, double* y) {
  active().raxpy(n, alpha, x, y);
}
inline void rgemv(std::size_t m, std::size_t n, const double* a,
                  const double* x, double* y) {
  active().rgemv(m, n, a, x, y);
}
inline void cmatmul_acc(std::size_t m, std::size_t k, std::size_t n,
                        const cplx* a, const cplx* b, cplx* c) {
  active().cmatmul_acc(m, k, n, a, b, c);
}

}  // namespace qgeo::kernels
