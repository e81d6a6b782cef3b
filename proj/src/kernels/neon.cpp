#include "campsim/kernels/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>

namespace campsim::kernels::neon {

// Two 2-lane accumulators give the same four partial sums as the scalar path.

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vfmaq_f64(acc01, vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
    acc23 = vfmaq_f64(acc23, vld1q_f64(a.data() + i + 2), vld1q_f64(b.data() + i + 2));
  }
  double out = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
               (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

double sum(std::span<const double> a) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vld1q_f64(a.data() + i));
    acc23 = vaddq_f64(acc23, vld1q_f64(a.data() + i + 2));
  }
  double out = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
               (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
  for (; i < n; ++i) out += a[i];
  return out;
}

void scale(std::span<double> a, double factor) {
  const float64x2_t f = vdupq_n_f64(factor);
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 2 <= n; i += 2) vst1q_f64(a.data() + i, vmulq_f64(vld1q_f64(a.data() + i), f));
  for (; i < n; ++i) a[i] *= factor;
}

}  // namespace campsim::kernels::neon

#endif
