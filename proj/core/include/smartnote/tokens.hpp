#pragma once

#include <cstddef>
#include <string_view>

namespace smartnote {

/// Conservative, vendor-neutral token estimate: the larger of ceil(bytes / 4)
/// and the number of whitespace-separated pieces. Shared by diff budgeting
/// and the token-count metric so the two stay comparable.
std::size_t count_tokens(std::string_view text) noexcept;

/// Recorded in reports next to every token count.
inline constexpr std::string_view kTokenizerId = "approx-max(bytes/4,pieces)-v1";

}  // namespace smartnote
