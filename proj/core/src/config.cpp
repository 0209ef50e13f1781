#include "smartnote/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "smartnote/errors.hpp"
#include "smartnote/text.hpp"

namespace smartnote {
namespace {

std::string normalise_key(std::string_view key) {
  auto k = text::to_lower(text::trim(key));
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

}  // namespace

const std::vector<std::string>& ConfigFile::known_keys() {
  static const std::vector<std::string> keys = {
      "domain",        "style",          "structure",       "mst",
      "group",         "provider",       "model",           "output",
      "seed",          "parallelism",    "diff-budget",     "category-model",
      "significance-model", "embeddings", "mock-script",    "llm-base-url",
      "github-api-url", "offline",       "llm-reorder",     "title",
      "description"};
  return keys;
}

ConfigFile ConfigFile::parse(std::string_view content) {
  ConfigFile cfg;
  std::size_t line_no = 0;
  for (auto line : text::split_lines(content)) {
    ++line_no;
    line = text::trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto where = "config line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(where + ": expected key = value");
    const auto key = normalise_key(line.substr(0, eq));
    auto value = text::trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const auto& known = known_keys();
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ParseError(where + ": unknown key '" + key + "'");
    if (!cfg.values_.emplace(key, std::string(value)).second) throw ParseError(where + ": key '" + key + "' repeated");
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::optional<std::string> ConfigFile::get(std::string_view key) const {
  const auto it = values_.find(normalise_key(key));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<bool> parse_bool(std::string_view s) {
  const auto v = text::to_lower(text::trim(s));
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  return std::nullopt;
}

}  // namespace smartnote
