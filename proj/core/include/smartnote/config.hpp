#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smartnote {

/// Flat `key = value` settings file (`.smartnote` in the repository root).
/// Keys mirror the long command-line flags without dashes ("mst",
/// "category-model"); '_' and '-' are interchangeable. '#' starts a comment
/// line. Values may be wrapped in double quotes.
class ConfigFile {
 public:
  /// Throws ParseError for malformed lines, unknown or repeated keys.
  static ConfigFile parse(std::string_view text);
  /// A missing file gives an empty config; unreadable files throw ParseError.
  static ConfigFile load(const std::filesystem::path& path);

  std::optional<std::string> get(std::string_view key) const;
  bool empty() const noexcept { return values_.empty(); }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> values_;
};

/// "true/false", "yes/no", "on/off", "1/0". nullopt otherwise.
std::optional<bool> parse_bool(std::string_view s);

}  // namespace smartnote
