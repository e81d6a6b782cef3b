#include "campsim/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>

namespace campsim::kernels::avx2 {

namespace {

__attribute__((target("avx2,fma"))) inline double hsum(__m256d v) {
  // lanes (s0, s1, s2, s3) -> (s0 + s1) + (s2 + s3), matching the scalar order
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  const double a = _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
  const double b = _mm_cvtsd_f64(hi) + _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
  return a + b;
}

}  // namespace

__attribute__((target("avx2,fma"))) double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

__attribute__((target("avx2,fma"))) double sum(std::span<const double> a) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a.data() + i));
  double out = hsum(acc);
  for (; i < n; ++i) out += a[i];
  return out;
}

__attribute__((target("avx2,fma"))) void scale(std::span<double> a, double factor) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(a.data() + i, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), f));
  for (; i < n; ++i) a[i] *= factor;
}

}  // namespace campsim::kernels::avx2

#endif
