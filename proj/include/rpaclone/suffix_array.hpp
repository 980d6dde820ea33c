#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rpaclone {

/// Suffix array over an integer alphabet by prefix doubling with counting
/// sorts, O(n log n). Symbols may be any int32 values.
std::vector<std::int32_t> build_suffix_array(std::span<const std::int32_t> text);

/// Kasai et al.: lcp[i] = longest common prefix of suffixes sa[i-1] and
/// sa[i]; lcp[0] = 0.
std::vector<std::int32_t> build_lcp(std::span<const std::int32_t> text, std::span<const std::int32_t> sa);

}  // namespace rpaclone
