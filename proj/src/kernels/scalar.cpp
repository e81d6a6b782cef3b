#include "campsim/kernels/kernels.hpp"

#include <cstddef>

namespace campsim::kernels::scalar {

// Four independent accumulators, combined as (s0 + s1) + (s2 + s3). The vector
// variants keep the same lane structure so results agree to a few ulps.

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  double out = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

double sum(std::span<const double> a) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  const std::size_t n = a.size();
  for (; i + 4 <= n; i += 4) {
    s0 += a[i];
    s1 += a[i + 1];
    s2 += a[i + 2];
    s3 += a[i + 3];
  }
  double out = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) out += a[i];
  return out;
}

void scale(std::span<double> a, double factor) {
  for (double& v : a) v *= factor;
}

}  // namespace campsim::kernels::scalar
