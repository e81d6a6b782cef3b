#include <algorithm>
#include <cmath>
#include <vector>

#include "campsim/bench/bench.hpp"
#include "campsim/core/error.hpp"
#include "campsim/kernels/kernels.hpp"

namespace campsim::bench {

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "series lengths differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  if (a.size() < 2) throw Error(ErrorCode::LengthMismatch, "need at least two paired values");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (constant(a) || constant(b)) throw Error(ErrorCode::DegenerateSeries, "series has zero variance");

  const double n = static_cast<double>(a.size());
  std::vector<double> da(a.begin(), a.end());
  std::vector<double> db(b.begin(), b.end());
  const double ma = kernels::sum(da) / n;
  const double mb = kernels::sum(db) / n;
  for (auto& x : da) x -= ma;
  for (auto& x : db) x -= mb;

  const double sxy = kernels::dot(da, db);
  const double sxx = kernels::dot(da, da);
  const double syy = kernels::dot(db, db);
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::DegenerateSeries, "series has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace campsim::bench
