#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace smartnote {

enum class PromptTactic {
  Delimiters,
  ChainOfThought,
  OneShot,
  FewShot,
  IntentClassification,
  LengthSpecification,
};

std::string_view to_string(PromptTactic t);
std::optional<PromptTactic> parse_prompt_tactic(std::string_view s);

/// A prompt with named `{placeholder}` slots. Placeholders are lowercase
/// identifiers in braces; any other brace text is literal.
struct PromptTemplate {
  std::string id;
  std::string body;
  std::set<std::string> placeholders;  // declared
  std::set<PromptTactic> tactics;
  int max_output_tokens = 512;

  /// Throws InvariantViolation for undeclared placeholders or a non-positive
  /// token limit, UnbalancedDelimiters for mismatched XML-style tags.
  void validate() const;
};

/// Placeholders referenced by a body, in order of first appearance.
std::vector<std::string> placeholders_in(std::string_view body);

/// Throws UnbalancedDelimiters unless every `<tag>` has a matching `</tag>`.
void check_delimiters(std::string_view body);

/// Substitutes every placeholder verbatim; bound values are not re-scanned.
/// Throws MissingBinding for the first unbound placeholder.
std::string render_prompt(const PromptTemplate& tmpl, const std::map<std::string, std::string>& bindings);

/// Rewrites decimal literals (digits '.' digits) to exactly two fractional
/// digits: pads with zeros, truncates extra digits. Left alone: integers,
/// dotted chains of three or more numbers (versions such as 1.2.3) and
/// numbers glued to a preceding identifier character (v1.2, x86.64).
std::string align_decimals(std::string_view text);

/// Template file format: `key: value` header lines (id, tactics,
/// placeholders, max_output_tokens), a line with `---`, then the body.
PromptTemplate parse_prompt_template(std::string_view file_text);

/// Immutable set of templates keyed by id.
class TemplateLibrary {
 public:
  TemplateLibrary() = default;
  /// Loads every `*.prompt` file of a directory.
  static TemplateLibrary load_dir(const std::filesystem::path& dir);

  void add(PromptTemplate t);
  const PromptTemplate& get(const std::string& id) const;
  bool contains(const std::string& id) const { return templates_.contains(id); }
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, PromptTemplate> templates_;
};

}  // namespace smartnote
