#include "qgeo/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <optional>

#include "qgeo/errors.hpp"

namespace qgeo::kernels {

namespace {

constexpr Ops kScalarOps{scalar::cdotc,  scalar::cdotu, scalar::caxpy,
                         scalar::rdot,   scalar::raxpy, scalar::rgemv,
                         scalar::cmatmul_acc};

#if defined(QGEO_HAVE_AVX2)
constexpr Ops kAvx2Ops{avx2::cdotc,  avx2::cdotu, avx2::caxpy, avx2::rdot,
                       avx2::raxpy,  avx2::rgemv, avx2::cmatmul_acc};
#endif

bool cpu_has_avx2() {
#if defined(QGEO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend default_backend() {
  if (const char* env = std::getenv("QGEO_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0) {
      if (!avx2_available())
        fail("kernel-backend", "QGEO_KERNELS=avx2 but AVX2 is unavailable");
      return Backend::avx2;
    }
    // anything else (including "auto") falls through to autodetection
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::optional<Backend>& forced() {
  static std::optional<Backend> f;
  return f;
}

}  // namespace

bool avx2_available() {
#if defined(QGEO_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok;
#else
  return false;
#endif
}

const Ops& table(Backend b) {
#if defined(QGEO_HAVE_AVX2)
  if (b == Backend::avx2) return kAvx2Ops;
#else
  if (b == Backend::avx2)
    fail("kernel-backend", "AVX2 kernels were not compiled in");
#endif
  return kScalarOps;
}

Backend active_backend() {
  if (forced().has_value()) return *forced();
  static const Backend detected = default_backend();
  return detected;
}

const Ops& active() { return table(active_backend()); }

const char* backend_name() {
  return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    fail("kernel-backend", "AVX2 backend unavailable on this machine");
  forced() = b;
}

void reset_backend() { forced().reset(); }

}  // namespace qgeo::kernels
