#pragma once

#include <cstdint>
#include <string_view>

namespace smartnote {

/// 64-bit FNV-1a. Stable across platforms; used for feature hashing and the
/// mock provider, so changing it invalidates every shipped model and golden.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace smartnote
