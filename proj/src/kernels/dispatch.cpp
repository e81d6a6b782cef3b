#include <atomic>

#include "campsim/kernels/kernels.hpp"

namespace campsim::kernels {

namespace {

// -1: automatic selection
std::atomic<int> g_override{-1};

Isa detect() noexcept {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
#if defined(__aarch64__)
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

const Isa kDetected = detect();

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "scalar";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return kDetected == Isa::Avx2;
    case Isa::Neon: return kDetected == Isa::Neon;
  }
  return false;
}

void set_isa_override(std::optional<Isa> isa) noexcept {
  if (!isa) {
    g_override.store(-1, std::memory_order_relaxed);
    return;
  }
  g_override.store(static_cast<int>(isa_available(*isa) ? *isa : Isa::Scalar), std::memory_order_relaxed);
}

Isa active_isa() noexcept {
  const int o = g_override.load(std::memory_order_relaxed);
  return o < 0 ? kDetected : static_cast<Isa>(o);
}

double dot(std::span<const double> a, std::span<const double> b) {
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2::dot(a, b);
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon::dot(a, b);
#endif
    default: return scalar::dot(a, b);
  }
}

double sum(std::span<const double> a) {
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2::sum(a);
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon::sum(a);
#endif
    default: return scalar::sum(a);
  }
}

void scale(std::span<double> a, double factor) {
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: avx2::scale(a, factor); return;
#endif
#if defined(__aarch64__)
    case Isa::Neon: neon::scale(a, factor); return;
#endif
    default: scalar::scale(a, factor); return;
  }
}

}  // namespace campsim::kernels
