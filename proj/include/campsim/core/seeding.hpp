#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace campsim {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derive a child seed from a base seed and an ordered list of tags. Used so
/// every generation call owns its own random stream regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::string_view> tags) noexcept;

/// The engine is fully specified by the standard; the distributions are not,
/// so sampling goes through the helpers below for cross-platform determinism.
using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi] (inclusive) by rejection sampling.
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);

/// Uniform real in [0, 1).
double uniform_unit(Rng& rng);

template <typename T>
void seeded_shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1));
    std::swap(items[i - 1], items[j]);
  }
}

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  return items[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(items.size()) - 1))];
}

}  // namespace campsim
