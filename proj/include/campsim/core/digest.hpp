#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace campsim {

/// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view data);

/// Stable 64-bit FNV-1a hash, used where a cheap platform-independent hash is enough.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

}  // namespace campsim
