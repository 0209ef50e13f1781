#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace smartnote::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split_lines(std::string_view s);
bool starts_with_ci(std::string_view s, std::string_view prefix);

/// First line of a commit message, trimmed.
std::string title_of(std::string_view message);

/// ASCII alphanumerics plus any byte >= 0x80 (so UTF-8 letters stay in words).
inline bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

inline bool is_identifier_byte(unsigned char c) { return is_word_byte(c) || c == '_'; }

/// Lowercased maximal runs of word bytes.
std::vector<std::string> words(std::string_view s);

/// Replace whole-word occurrences of `from` (identifier boundaries) with `to`.
std::string replace_identifier(std::string_view s, std::string_view from, std::string_view to);
bool contains_identifier(std::string_view s, std::string_view name);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Number of whitespace-separated words.
std::size_t word_count(std::string_view s);

}  // namespace smartnote::text
