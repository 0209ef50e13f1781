#include "smartnote/languages.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "smartnote/text.hpp"

namespace smartnote {
namespace {

using Entry = std::pair<std::string_view, std::string_view>;

// Lowercased extension (without dot) -> tag.
constexpr std::array kByExtension = std::to_array<Entry>({
    {"adoc", "AsciiDoc"},   {"bash", "Shell"},       {"bat", "Batchfile"},   {"c", "C"},
    {"cc", "C++"},          {"cfg", "INI"},          {"clj", "Clojure"},     {"cmake", "CMake"},
    {"cmd", "Batchfile"},   {"coffee", "CoffeeScript"}, {"conf", "INI"},     {"cpp", "C++"},
    {"cs", "C#"},           {"css", "CSS"},          {"cts", "TypeScript"},  {"cu", "Cuda"},
    {"cxx", "C++"},         {"dart", "Dart"},        {"el", "Emacs Lisp"},   {"erl", "Erlang"},
    {"ex", "Elixir"},       {"exs", "Elixir"},       {"fs", "F#"},           {"ftl", "Fluent"},
    {"go", "Go"},           {"gradle", "Gradle"},    {"groovy", "Groovy"},   {"h", "C"},
    {"hh", "C++"},          {"hpp", "C++"},          {"hs", "Haskell"},      {"htm", "HTML"},
    {"html", "HTML"},       {"hxx", "C++"},          {"ini", "INI"},         {"ipynb", "Jupyter Notebook"},
    {"java", "Java"},       {"jl", "Julia"},         {"js", "JavaScript"},   {"json", "JSON"},
    {"jsx", "JavaScript"},  {"kt", "Kotlin"},        {"kts", "Kotlin"},      {"less", "Less"},
    {"lua", "Lua"},         {"m", "Objective-C"},    {"markdown", "Markdown"}, {"md", "Markdown"},
    {"mdx", "MDX"},         {"mjs", "JavaScript"},   {"ml", "OCaml"},        {"mm", "Objective-C++"},
    {"mts", "TypeScript"},  {"nim", "Nim"},          {"nix", "Nix"},         {"php", "PHP"},
    {"pl", "Perl"},         {"pm", "Perl"},          {"po", "Gettext Catalog"}, {"proto", "Protocol Buffer"},
    {"ps1", "PowerShell"},  {"py", "Python"},        {"pyi", "Python"},      {"r", "R"},
    {"rb", "Ruby"},         {"rs", "Rust"},          {"rst", "reStructuredText"}, {"sass", "Sass"},
    {"scala", "Scala"},     {"scss", "SCSS"},        {"sh", "Shell"},        {"sql", "SQL"},
    {"svelte", "Svelte"},   {"svg", "SVG"},          {"swift", "Swift"},     {"tex", "TeX"},
    {"tf", "HCL"},          {"toml", "TOML"},        {"ts", "TypeScript"},   {"tsx", "TSX"},
    {"txt", "Text"},        {"vue", "Vue"},          {"xml", "XML"},         {"yaml", "YAML"},
    {"yml", "YAML"},        {"zig", "Zig"},          {"zsh", "Shell"},
});

// Exact file names (lowercased) that carry no useful extension.
constexpr std::array kByName = std::to_array<Entry>({
    {"cmakelists.txt", "CMake"},
    {"dockerfile", "Dockerfile"},
    {"gemfile", "Ruby"},
    {"makefile", "Makefile"},
    {"gnumakefile", "Makefile"},
    {"rakefile", "Ruby"},
    {"cargo.lock", "TOML"},
    {"license", "Text"},
});

const std::vector<std::string_view>& sorted_languages() {
  static const std::vector<std::string_view> langs = [] {
    std::vector<std::string_view> v;
    for (const auto& [_, lang] : kByExtension) v.push_back(lang);
    for (const auto& [_, lang] : kByName) v.push_back(lang);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }();
  return langs;
}

std::string_view lookup(std::span<const Entry> table, std::string_view key) {
  for (const auto& [k, v] : table)
    if (k == key) return v;
  return {};
}

}  // namespace

std::string language_for_path(std::string_view path) {
  const auto slash = path.find_last_of('/');
  const auto name = text::to_lower(slash == std::string_view::npos ? path : path.substr(slash + 1));
  if (auto hit = lookup(kByName, name); !hit.empty()) return std::string(hit);
  const auto dot = name.find_last_of('.');
  if (dot == std::string::npos || dot == 0) return std::string(kOtherLanguage);
  if (auto hit = lookup(kByExtension, std::string_view(name).substr(dot + 1)); !hit.empty())
    return std::string(hit);
  return std::string(kOtherLanguage);
}

std::span<const std::string_view> known_languages() { return sorted_languages(); }

}  // namespace smartnote
