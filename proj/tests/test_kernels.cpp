#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include "qgeo/errors.hpp"
#include "qgeo/kernels.hpp"
#include "qgeo/rng.hpp"

using qgeo::Rng;
using cplx = std::complex<double>;
namespace k = qgeo::kernels;

namespace {

// sizes that hit every remainder path of the 4-wide and 8-wide loops
const std::vector<std::size_t> kSizes = {1, 2, 3, 4, 5, 7, 8, 9, 13, 16, 17, 31, 64, 100};

std::vector<cplx> random_cvec(std::size_t n, Rng& rng) {
  std::vector<cplx> v(n);
  for (auto& z : v) z = rng.complex_gaussian();
  return v;
}

std::vector<double> random_rvec(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.gaussian();
  return v;
}

double reassoc_tol(std::size_t n) {
  return 1e-13 * static_cast<double>(n + 1);
}

}  // namespace

TEST_CASE("scalar kernels match naive formulas") {
  Rng rng(7);
  for (const auto n : kSizes) {
    const auto x = random_cvec(n, rng);
    const auto y = random_cvec(n, rng);

    cplx dc = 0.0, du = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dc += std::conj(x[i]) * y[i];
      du += x[i] * y[i];
    }
    CHECK(std::abs(k::scalar::cdotc(n, x.data(), y.data()) - dc) <= reassoc_tol(n));
    CHECK(std::abs(k::scalar::cdotu(n, x.data(), y.data()) - du) <= reassoc_tol(n));

    const cplx alpha{0.7, -0.3};
    auto acc = y;
    k::scalar::caxpy(n, alpha, x.data(), acc.data());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(acc[i] - (y[i] + alpha * x[i])) <= 1e-15);
  }
}

TEST_CASE("rgemv and cmatmul_acc agree with triple loops") {
  Rng rng(11);
  for (const std::size_t m : {1u, 2u, 3u, 5u, 9u, 16u}) {
    for (const std::size_t n : {1u, 2u, 4u, 7u, 16u}) {
      const auto a = random_rvec(m * n, rng);
      const auto x = random_rvec(n, rng);
      std::vector<double> y(m, 0.0);
      k::rgemv(m, n, a.data(), x.data(), y.data());
      for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * x[j];
        CHECK(std::abs(y[i] - acc) <= reassoc_tol(n));
      }
    }
  }

  const std::size_t m = 5, kk = 7, n = 4;
  const auto a = random_cvec(m * kk, rng);
  const auto b = random_cvec(kk * n, rng);
  std::vector<cplx> c(m * n, cplx{1.0, -1.0});
  auto expected = c;
  k::cmatmul_acc(m, kk, n, a.data(), b.data(), c.data());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < kk; ++t) acc += a[i * kk + t] * b[t * n + j];
      expected[i * n + j] += acc;
    }
  for (std::size_t i = 0; i < c.size(); ++i)
    CHECK(std::abs(c[i] - expected[i]) <= reassoc_tol(kk));
}

TEST_CASE("avx2 kernels are equivalent to scalar kernels") {
  if (!k::avx2_available()) {
    MESSAGE("AVX2 not available on this host; skipping equivalence checks");
    return;
  }
  const k::Ops& s = k::table(k::Backend::scalar);
  const k::Ops& v = k::table(k::Backend::avx2);

  Rng rng(23);
  for (const auto n : kSizes) {
    const auto x = random_cvec(n, rng);
    const auto y = random_cvec(n, rng);
    CHECK(std::abs(s.cdotc(n, x.data(), y.data()) -
                   v.cdotc(n, x.data(), y.data())) <= reassoc_tol(n));
    CHECK(std::abs(s.cdotu(n, x.data(), y.data()) -
                   v.cdotu(n, x.data(), y.data())) <= reassoc_tol(n));

    const cplx alpha{-0.4, 1.1};
    auto acc_s = y, acc_v = y;
    s.caxpy(n, alpha, x.data(), acc_s.data());
    v.caxpy(n, alpha, x.data(), acc_v.data());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(acc_s[i] - acc_v[i]) <= 1e-15);

    const auto rx = random_rvec(n, rng);
    const auto ry = random_rvec(n, rng);
    CHECK(std::abs(s.rdot(n, rx.data(), ry.data()) -
                   v.rdot(n, rx.data(), ry.data())) <= reassoc_tol(n));

    auto racc_s = ry, racc_v = ry;
    s.raxpy(n, 0.37, rx.data(), racc_s.data());
    v.raxpy(n, 0.37, rx.data(), racc_v.data());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(racc_s[i] - racc_v[i]) <= 1e-15);
  }

  for (const std::size_t m : {1u, 3u, 8u, 13u}) {
    for (const std::size_t n : {1u, 4u, 9u, 16u}) {
      const auto a = random_rvec(m * n, rng);
      const auto x = random_rvec(n, rng);
      std::vector<double> ys(m, 0.0), yv(m, 0.0);
      s.rgemv(m, n, a.data(), x.data(), ys.data());
      v.rgemv(m, n, a.data(), x.data(), yv.data());
      for (std::size_t i = 0; i < m; ++i)
        CHECK(std::abs(ys[i] - yv[i]) <= reassoc_tol(n));
    }
  }

  const std::size_t m = 6, kk = 9, n = 5;
  const auto a = random_cvec(m * kk, rng);
  const auto b = random_cvec(kk * n, rng);
  std::vector<cplx> cs(m * n, 0.0), cv(m * n, 0.0);
  s.cmatmul_acc(m, kk, n, a.data(), b.data(), cs.data());
  v.cmatmul_acc(m, kk, n, a.data(), b.data(), cv.data());
  for (std::size_t i = 0; i < cs.size(); ++i)
    CHECK(std::abs(cs[i] - cv[i]) <= reassoc_tol(kk));
}

TEST_CASE("backend forcing and reporting") {
  k::set_backend(k::Backend::scalar);
  CHECK(k::active_backend() == k::Backend::scalar);
  CHECK(std::string(k::backend_name()) == "scalar");

  if (k::avx2_available()) {
    k::set_backend(k::Backend::avx2);
    CHECK(k::active_backend() == k::Backend::avx2);
    CHECK(std::string(k::backend_name()) == "avx2");
  } else {
    CHECK_THROWS_AS(k::set_backend(k::Backend::avx2), qgeo::Error);
  }
  k::reset_backend();

  if (!k::avx2_available())
    CHECK(k::active_backend() == k::Backend::scalar);
}

TEST_CASE("library results are backend independent") {
  if (!k::avx2_available()) return;

  auto run = [] {
    Rng rng(99);
    const auto x = random_cvec(37, rng);
    const auto y = random_cvec(37, rng);
    return k::cdotc(37, x.data(), y.data());
  };

  k::set_backend(k::Backend::scalar);
  const cplx a = run();
  k::set_backend(k::Backend::avx2);
  const cplx b = run();
  k::reset_backend();
  CHECK(std::abs(a - b) <= 1e-13);
}
