#include "smartnote/semver.hpp"

#include <cctype>
#include <limits>

namespace smartnote {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ident_char(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-';
}

std::optional<std::uint64_t> parse_numeric(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (!is_digit(c)) return std::nullopt;
    const auto d = static_cast<std::uint64_t>(c - '0');
    if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) return std::nullopt;
    v = v * 10 + d;
  }
  return v;
}

// Dot-separated identifiers; numeric ones must not carry leading zeros when
// `numeric_rule` is set (pre-release), build metadata allows them.
bool valid_identifiers(std::string_view s, bool numeric_rule) {
  if (s.empty()) return false;
  std::size_t start = 0;
  while (true) {
    const auto dot = s.find('.', start);
    const auto part = s.substr(start, dot == std::string_view::npos ? s.npos : dot - start);
    if (part.empty()) return false;
    bool all_digits = true;
    for (char c : part) {
      if (!is_ident_char(c)) return false;
      all_digits = all_digits && is_digit(c);
    }
    if (numeric_rule && all_digits && part.size() > 1 && part[0] == '0') return false;
    if (dot == std::string_view::npos) return true;
    start = dot + 1;
  }
}

}  // namespace

std::optional<SemVer> parse_semver(std::string_view text) {
  if (!text.empty() && (text[0] == 'v' || text[0] == 'V')) text.remove_prefix(1);
  SemVer v;
  const auto plus = text.find('+');
  if (plus != std::string_view::npos) {
    v.build = std::string(text.substr(plus + 1));
    if (!valid_identifiers(v.build, false)) return std::nullopt;
    text = text.substr(0, plus);
  }
  const auto dash = text.find('-');
  if (dash != std::string_view::npos) {
    v.prerelease = std::string(text.substr(dash + 1));
    if (!valid_identifiers(v.prerelease, true)) return std::nullopt;
    text = text.substr(0, dash);
  }
  const auto d1 = text.find('.');
  if (d1 == std::string_view::npos) return std::nullopt;
  const auto d2 = text.find('.', d1 + 1);
  if (d2 == std::string_view::npos) return std::nullopt;
  const auto ma = parse_numeric(text.substr(0, d1));
  const auto mi = parse_numeric(text.substr(d1 + 1, d2 - d1 - 1));
  const auto pa = parse_numeric(text.substr(d2 + 1));
  if (!ma || !mi || !pa) return std::nullopt;
  v.major = *ma;
  v.minor = *mi;
  v.patch = *pa;
  return v;
}

ReleaseType classify_release_type(std::string_view previous_version, std::string_view new_version) {
  const auto a = parse_semver(previous_version);
  const auto b = parse_semver(new_version);
  if (!a || !b) return ReleaseType::Unknown;
  if (a->major != b->major) return ReleaseType::Major;
  if (a->minor != b->minor) return ReleaseType::Minor;
  if (a->patch != b->patch) return ReleaseType::Patch;
  if (a->prerelease != b->prerelease) return ReleaseType::Patch;
  return ReleaseType::Unknown;
}

}  // namespace smartnote
