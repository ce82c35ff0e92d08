#pragma once

#include <cstdint>
#include <string_view>

namespace egret {

// FNV-1a, 64-bit. The offset basis doubles as the fixed hash seed for the
// local feature-hashing embedder; it is a compile-time constant and is never
// randomized.
inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t h = kFnvOffsetBasis) noexcept {
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace egret
