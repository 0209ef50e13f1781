#include "smartnote/prompt.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "smartnote/errors.hpp"
#include "smartnote/text.hpp"

namespace smartnote {
namespace {

bool is_lower_ident_start(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool is_lower_ident(char c) { return is_lower_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_tag_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_tag_char(char c) {
  return is_tag_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '-';
}

// Length of a `{ident}` placeholder starting at `i`, or 0.
std::size_t placeholder_at(std::string_view s, std::size_t i) {
  if (s[i] != '{' || i + 2 >= s.size() || !is_lower_ident_start(s[i + 1])) return 0;
  std::size_t j = i + 1;
  while (j < s.size() && is_lower_ident(s[j])) ++j;
  if (j < s.size() && s[j] == '}') return j - i + 1;
  return 0;
}

constexpr std::pair<PromptTactic, std::string_view> kTactics[] = {
    {PromptTactic::Delimiters, "delimiters"},
    {PromptTactic::ChainOfThought, "chain_of_thought"},
    {PromptTactic::OneShot, "one_shot"},
    {PromptTactic::FewShot, "few_shot"},
    {PromptTactic::IntentClassification, "intent_classification"},
    {PromptTactic::LengthSpecification, "length_specification"},
};

}  // namespace

std::string_view to_string(PromptTactic t) {
  for (const auto& [k, v] : kTactics)
    if (k == t) return v;
  return "";
}

std::optional<PromptTactic> parse_prompt_tactic(std::string_view s) {
  for (const auto& [k, v] : kTactics)
    if (v == s) return k;
  return std::nullopt;
}

std::vector<std::string> placeholders_in(std::string_view body) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (const auto n = placeholder_at(body, i)) {
      std::string name(body.substr(i + 1, n - 2));
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
      i += n - 1;
    }
  }
  return out;
}

void check_delimiters(std::string_view body) {
  std::vector<std::string_view> open;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '<') continue;
    const bool closing = i + 1 < body.size() && body[i + 1] == '/';
    std::size_t j = i + (closing ? 2 : 1);
    if (j >= body.size() || !is_tag_start(body[j])) continue;
    const std::size_t name_start = j;
    while (j < body.size() && is_tag_char(body[j])) ++j;
    const auto name = body.substr(name_start, j - name_start);
    const auto gt = body.find('>', j);
    if (gt == std::string_view::npos) continue;
    // Attributes are allowed on opening tags only; anything else is not a tag.
    const auto inner = body.substr(j, gt - j);
    if (closing && !text::trim(inner).empty()) continue;
    if (!closing && !inner.empty() && inner[0] != ' ' && inner != "/") continue;
    if (!closing && !inner.empty() && inner.back() == '/') {
      i = gt;
      continue;
    }
    if (closing) {
      if (open.empty() || open.back() != name)
        throw UnbalancedDelimiters("unexpected </" + std::string(name) + "> in prompt template");
      open.pop_back();
    } else {
      open.push_back(name);
    }
    i = gt;
  }
  if (!open.empty())
    throw UnbalancedDelimiters("unclosed <" + std::string(open.back()) + "> in prompt template");
}

void PromptTemplate::validate() const {
  if (id.empty()) throw InvariantViolation("prompt template without id");
  if (max_output_tokens <= 0) throw InvariantViolation("template " + id + ": max_output_tokens must be positive");
  for (const auto& p : placeholders_in(body)) {
    if (!placeholders.contains(p))
      throw InvariantViolation("template " + id + ": placeholder {" + p + "} is not declared");
  }
  check_delimiters(body);
}

std::string render_prompt(const PromptTemplate& tmpl, const std::map<std::string, std::string>& bindings) {
  check_delimiters(tmpl.body);
  const std::string_view body = tmpl.body;
  for (const auto& p : placeholders_in(body))
    if (!bindings.contains(p)) throw MissingBinding(p);
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (const auto n = placeholder_at(body, i)) {
      out += bindings.at(std::string(body.substr(i + 1, n - 2)));
      i += n - 1;
    } else {
      out += body[i];
    }
  }
  return out;
}

std::string align_decimals(std::string_view s) {
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  std::string out;
  out.reserve(s.size() + 8);
  std::size_t i = 0;
  while (i < s.size()) {
    const bool starts_number =
        digit(s[i]) && (i == 0 || !(text::is_identifier_byte(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == '.'));
    if (!starts_number) {
      out += s[i++];
      continue;
    }
    // Scan the whole dotted chain of digit groups.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::size_t j = i;
    while (true) {
      const std::size_t g = j;
      while (j < s.size() && digit(s[j])) ++j;
      groups.emplace_back(g, j);
      if (j + 1 < s.size() && s[j] == '.' && digit(s[j + 1])) {
        ++j;
        continue;
      }
      break;
    }
    if (groups.size() == 2) {
      out.append(s.substr(groups[0].first, groups[0].second - groups[0].first));
      out += '.';
      auto frac = s.substr(groups[1].first, groups[1].second - groups[1].first);
      if (frac.size() >= 2) {
        out.append(frac.substr(0, 2));
      } else {
        out.append(frac);
        out += '0';
      }
    } else {
      out.append(s.substr(i, j - i));
    }
    i = j;
  }
  return out;
}

PromptTemplate parse_prompt_template(std::string_view file_text) {
  PromptTemplate t;
  const auto sep = file_text.find("\n---\n");
  if (sep == std::string_view::npos) throw ParseError("prompt template: missing '---' separator");
  for (auto line : text::split_lines(file_text.substr(0, sep))) {
    line = text::trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("prompt template: bad header line: " + std::string(line));
    const auto key = text::trim(line.substr(0, colon));
    const auto value = text::trim(line.substr(colon + 1));
    auto list = [&] {
      std::vector<std::string> items;
      std::string cur;
      for (char c : value) {
        if (c == ',') {
          if (!text::trim(cur).empty()) items.emplace_back(text::trim(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!text::trim(cur).empty()) items.emplace_back(text::trim(cur));
      return items;
    };
    if (key == "id") {
      t.id = std::string(value);
    } else if (key == "tactics") {
      for (const auto& item : list()) {
        const auto tactic = parse_prompt_tactic(item);
        if (!tactic) throw ParseError("prompt template: unknown tactic " + item);
        t.tactics.insert(*tactic);
      }
    } else if (key == "placeholders") {
      for (auto& item : list()) t.placeholders.insert(std::move(item));
    } else if (key == "max_output_tokens") {
      try {
        t.max_output_tokens = std::stoi(std::string(value));
      } catch (const std::exception&) {
        throw ParseError("prompt template: bad max_output_tokens");
      }
    } else {
      throw ParseError("prompt template: unknown header key " + std::string(key));
    }
  }
  t.body = std::string(file_text.substr(sep + 5));
  while (!t.body.empty() && t.body.back() == '\n') t.body.pop_back();
  t.validate();
  return t;
}

TemplateLibrary TemplateLibrary::load_dir(const std::filesystem::path& dir) {
  TemplateLibrary lib;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".prompt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      lib.add(parse_prompt_template(ss.str()));
    } catch (const Error& e) {
      throw ParseError(f.string() + ": " + e.what());
    }
  }
  return lib;
}

void TemplateLibrary::add(PromptTemplate t) {
  t.validate();
  auto id = t.id;
  templates_.insert_or_assign(std::move(id), std::move(t));
}

const PromptTemplate& TemplateLibrary::get(const std::string& id) const {
  const auto it = templates_.find(id);
  if (it == templates_.end()) throw Error("unknown prompt template: " + id);
  return it->second;
}

std::vector<std::string> TemplateLibrary::ids() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : templates_) out.push_back(k);
  return out;
}

}  // namespace smartnote
