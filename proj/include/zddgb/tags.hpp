// Operation-cache tags used above the ZDD kernel.
#pragma once

#include <cstdint>

#include "zddgb/zdd.hpp"

namespace zddgb::tags {

inline constexpr std::uint32_t kBase = static_cast<std::uint32_t>(OpTag::kUserBase);

inline constexpr std::uint32_t kMul = kBase + 0;
inline constexpr std::uint32_t kNfMono = kBase + 1;
inline constexpr std::uint32_t kBlockDeg = kBase + 2;
inline constexpr std::uint32_t kDegBounded = kBase + 3;
inline constexpr std::uint32_t kZeros = kBase + 8;
inline constexpr std::uint32_t kClosure = kBase + 9;
inline constexpr std::uint32_t kMinimal = kBase + 10;
inline constexpr std::uint32_t kSmallestLex = kBase + 11;
inline constexpr std::uint32_t kSimple = kBase + 12;

}  // namespace zddgb::tags
