#if defined(QGEO_HAVE_AVX2)

#include <immintrin.h>

#include "qgeo/kernels.hpp"

namespace qgeo::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// sign masks flipping even / odd lanes of an interleaved (re,im) vector
inline __m256d sign_even() { return _mm256_setr_pd(-0.0, 0.0, -0.0, 0.0); }
inline __m256d sign_odd() { return _mm256_setr_pd(0.0, -0.0, 0.0, -0.0); }

}  // namespace

cplx cdotc(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d re_acc = _mm256_setzero_pd();
  __m256d im_acc = _mm256_setzero_pd();
  const __m256d se = sign_even();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);  // swap (re,im) pairs
    re_acc = _mm256_fmadd_pd(xv, yv, re_acc);
    im_acc = _mm256_add_pd(im_acc, _mm256_xor_pd(_mm256_mul_pd(xs, yv), se));
  }
  double re = hsum(re_acc), im = hsum(im_acc);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

cplx cdotu(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d re_acc = _mm256_setzero_pd();
  __m256d im_acc = _mm256_setzero_pd();
  const __m256d so = sign_odd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    re_acc = _mm256_add_pd(re_acc, _mm256_xor_pd(_mm256_mul_pd(xv, yv), so));
    im_acc = _mm256_fmadd_pd(xs, yv, im_acc);
  }
  double re = hsum(re_acc), im = hsum(im_acc);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const __m256d se = sign_even();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    const __m256d t = _mm256_fmadd_pd(ar, xv, yv);
    const __m256d u = _mm256_xor_pd(_mm256_mul_pd(ai, xs), se);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(t, u));
  }
  const double alr = alpha.real(), ali = alpha.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx{alr * xr - ali * xi, alr * xi + ali * xr};
  }
}

double rdot(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void raxpy(std::size_t n, double alpha, const double* x, double* y) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(
        y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i),
                               _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void rgemv(std::size_t m, std::size_t n, const double* a, const double* x,
           double* y) {
  for (std::size_t i = 0; i < m; ++i) y[i] = rdot(n, a + i * n, x);
}

void cmatmul_acc(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                 const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      caxpy(n, a[i * k + p], b + p * n, c + i * n);
    }
  }
}

}  // namespace qgeo::kernels::avx2

#endif  // QGEO_HAVE_AVX2
