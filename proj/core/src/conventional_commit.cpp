#include "smartnote/conventional_commit.hpp"

#include <cctype>
#include <regex>

#include "smartnote/text.hpp"

namespace smartnote {
namespace {

const std::regex& header_re() {
  static const std::regex re(R"(^([A-Za-z]+)(?:\(([^()\r\n]*)\))?(!)?:[ \t]+(\S.*)$)");
  return re;
}

}  // namespace

std::optional<ConventionalHeader> parse_conventional(std::string_view message) {
  const auto title = text::title_of(message);
  std::smatch m;
  if (!std::regex_match(title, m, header_re())) return std::nullopt;
  ConventionalHeader h;
  h.type = text::to_lower(m[1].str());
  h.scope = m[2].str();
  h.breaking = m[3].matched;
  h.description = m[4].str();
  for (auto line : text::split_lines(message)) {
    if (text::starts_with_ci(line, "BREAKING CHANGE:") || text::starts_with_ci(line, "BREAKING-CHANGE:"))
      h.breaking = true;
  }
  return h;
}

std::string strip_conventional_prefix(std::string_view title) {
  std::string out;
  if (const auto h = parse_conventional(title)) {
    out = h->description;
  } else {
    out = std::string(text::trim(title));
  }
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

}  // namespace smartnote
