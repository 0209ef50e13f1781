#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace smartnote {

/// Header of a Conventional Commits message: `type(scope)!: description`.
struct ConventionalHeader {
  std::string type;  // lowercased
  std::string scope;
  bool breaking = false;  // '!' marker or a BREAKING CHANGE footer
  std::string description;
};

/// Returns nullopt when the title does not follow the convention.
std::optional<ConventionalHeader> parse_conventional(std::string_view message);

/// Title with any `type(scope)!: ` prefix removed and the first letter
/// capitalised.
std::string strip_conventional_prefix(std::string_view title);

}  // namespace smartnote
