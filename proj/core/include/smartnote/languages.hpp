#pragma once

#include <span>
#include <string>
#include <string_view>

namespace smartnote {

/// Sentinel tag for files whose extension is not in the table.
inline constexpr std::string_view kOtherLanguage = "Other";

/// Language tag for a repository path, by file name then extension.
/// Covers the popular languages of GitHub linguist; unknown files map to
/// kOtherLanguage.
std::string language_for_path(std::string_view path);

/// Every tag language_for_path can return except kOtherLanguage, sorted.
std::span<const std::string_view> known_languages();

}  // namespace smartnote
