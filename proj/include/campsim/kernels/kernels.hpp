#pragma once

#include <optional>
#include <span>
#include <string_view>

// Dense double-precision reductions behind the similarity analytics.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, an AVX2+FMA (x86-64) or NEON (AArch64) variant. The dispatched
// entry points pick the widest variant the running CPU supports; an override
// forces a specific variant so tests can compare them.

namespace campsim::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

/// Variant used by the dispatched entry points.
Isa active_isa() noexcept;

/// True if `isa` was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Forces a variant (nullopt restores automatic selection). Requests for an
/// unavailable variant fall back to scalar.
void set_isa_override(std::optional<Isa> isa) noexcept;

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
/// In place: a[i] *= factor.
void scale(std::span<double> a, double factor);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
void scale(std::span<double> a, double factor);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
void scale(std::span<double> a, double factor);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
void scale(std::span<double> a, double factor);
}  // namespace neon
#endif

}  // namespace campsim::kernels
