#include "smartnote/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <regex>
#include <unordered_set>

#include "json.hpp"
#include "smartnote/assets.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/markdown.hpp"
#include "smartnote/repo_miner.hpp"
#include "smartnote/text.hpp"
#include "smartnote/tokens.hpp"

namespace smartnote {
namespace {

bool is_hex(char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

std::unordered_set<std::string> load_word_set(const char* asset) {
  std::unordered_set<std::string> out;
  const auto content = read_file(asset_path(asset));
  for (auto line : text::split_lines(content)) {
    line = text::trim(line);
    if (line.empty() || line[0] == '#') continue;
    out.insert(text::to_lower(line));
  }
  return out;
}

const std::unordered_set<std::string>& familiar_words() {
  static const auto words = load_word_set("dale_chall_familiar.txt");
  return words;
}

const std::unordered_set<std::string>& entity_lexicon() {
  static const auto words = load_word_set("entity_lexicon.txt");
  return words;
}

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> abbr = {
      "e.g.", "i.e.", "etc.", "vs.", "mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "no.", "fig.", "approx.",
      "inc.", "ltd.", "jr.", "sr.", "u.s.", "al.", "cf.", "ca.", "resp.", "misc.", "ver.", "min.", "max."};
  return abbr;
}

// Token with leading and trailing punctuation removed.
std::string_view strip_punct(std::string_view t) {
  auto edge = [](char c) {
    return c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',' || c == '.' ||
           c == ';' || c == ':' || c == '!' || c == '?' || c == '"' || c == '\'' || c == '*';
  };
  while (!t.empty() && edge(t.front())) t.remove_prefix(1);
  // A trailing "()" belongs to a function name.
  while (!t.empty() && edge(t.back())) {
    if (t.size() >= 3 && t.ends_with("()") ) break;
    t.remove_suffix(1);
  }
  return t;
}

std::vector<std::string_view> ws_tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const auto b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

bool has_alnum(std::string_view t) {
  for (char c : t)
    if (is_alpha(c) || is_digit(c) || static_cast<unsigned char>(c) >= 0x80) return true;
  return false;
}

}  // namespace

std::vector<CommitRef> parse_commit_list(std::string_view content) {
  std::vector<CommitRef> out;
  std::size_t line_no = 0;
  for (auto line : text::split_lines(content)) {
    ++line_no;
    line = text::trim(line);
    if (line.empty() || line[0] == '#') continue;
    CommitRef ref;
    const auto comma = line.find(',');
    ref.sha = text::to_lower(text::trim(line.substr(0, comma)));
    if (ref.sha.size() < 7 || !std::all_of(ref.sha.begin(), ref.sha.end(), is_hex))
      throw ParseError("commit list line " + std::to_string(line_no) + ": bad sha");
    if (comma != std::string_view::npos) {
      auto pr = text::trim(line.substr(comma + 1));
      if (!pr.empty() && pr[0] == '#') pr.remove_prefix(1);
      if (!pr.empty()) {
        if (pr.size() > 9 || !std::all_of(pr.begin(), pr.end(), is_digit))
          throw ParseError("commit list line " + std::to_string(line_no) + ": bad PR number");
        ref.pr = std::stoi(std::string(pr));
      }
    }
    out.push_back(std::move(ref));
  }
  return out;
}

double commit_coverage(std::string_view note, const std::vector<CommitRef>& commits) {
  if (commits.empty()) throw NoCommits();
  std::vector<std::string> runs;
  std::set<int> prs;
  for (std::size_t i = 0; i < note.size();) {
    const bool boundary = i == 0 || !text::is_identifier_byte(static_cast<unsigned char>(note[i - 1]));
    if (boundary && is_hex(note[i])) {
      std::size_t j = i;
      while (j < note.size() && is_hex(note[j])) ++j;
      const bool end_ok = j == note.size() || !text::is_identifier_byte(static_cast<unsigned char>(note[j]));
      if (end_ok && j - i >= 7 && j - i <= 40) runs.push_back(text::to_lower(note.substr(i, j - i)));
      i = j;
      continue;
    }
    if (note[i] == '#' && i + 1 < note.size() && is_digit(note[i + 1]) &&
        (i == 0 || !text::is_identifier_byte(static_cast<unsigned char>(note[i - 1])))) {
      std::size_t j = i + 1;
      while (j < note.size() && is_digit(note[j])) ++j;
      if ((j == note.size() || !text::is_identifier_byte(static_cast<unsigned char>(note[j]))) && j - i - 1 <= 9)
        prs.insert(std::stoi(std::string(note.substr(i + 1, j - i - 1))));
      i = j;
      continue;
    }
    ++i;
  }
  std::size_t mentioned = 0;
  for (const auto& c : commits) {
    const auto sha = text::to_lower(c.sha);
    bool hit = c.pr && prs.contains(*c.pr);
    for (const auto& r : runs) {
      if (hit) break;
      hit = sha.starts_with(r);
    }
    mentioned += hit;
  }
  return static_cast<double>(mentioned) / static_cast<double>(commits.size());
}

double entropy_of_counts(const std::vector<std::size_t>& counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;  // no negative zero
}

double information_entropy(std::string_view note) {
  const auto outline = markdown::parse_outline(note);
  std::vector<std::size_t> counts;
  for (const auto& c : outline.categories) counts.push_back(c.items);
  return entropy_of_counts(counts);
}

std::vector<std::string> split_sentences(std::string_view prose) {
  std::vector<std::string> out;
  for (auto line : text::split_lines(prose)) {
    line = text::trim(line);
    std::size_t start = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (c != '.' && c != '!' && c != '?') continue;
      std::size_t j = i + 1;
      if (j >= line.size() || !std::isspace(static_cast<unsigned char>(line[j]))) continue;
      while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j >= line.size() || !is_upper(line[j])) continue;
      if (c == '.') {
        std::size_t w = i;
        while (w > start && !std::isspace(static_cast<unsigned char>(line[w - 1]))) --w;
        auto word = text::to_lower(line.substr(w, i + 1 - w));
        while (!word.empty() && (word.front() == '(' || word.front() == '"')) word.erase(word.begin());
        if (abbreviations().contains(word)) continue;
        if (word.size() == 2 && is_alpha(word[0])) continue;  // an initial such as "J."
      }
      auto piece = text::trim(line.substr(start, i + 1 - start));
      if (!piece.empty()) out.emplace_back(piece);
      start = j;
    }
    auto rest = text::trim(line.substr(std::min(start, line.size())));
    if (!rest.empty()) out.emplace_back(rest);
  }
  return out;
}

std::vector<std::string> prose_words(std::string_view prose) {
  std::vector<std::string> out;
  for (auto t : ws_tokens(prose))
    if (has_alnum(t)) out.emplace_back(t);
  return out;
}

bool is_familiar_word(std::string_view raw) {
  std::string w;
  for (char c : raw) {
    if (is_alpha(c) || is_digit(c) || c == '\'' || c == '-' || static_cast<unsigned char>(c) >= 0x80)
      w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  while (!w.empty() && (w.front() == '\'' || w.front() == '-')) w.erase(w.begin());
  while (!w.empty() && (w.back() == '\'' || w.back() == '-')) w.pop_back();
  if (w.empty()) return true;
  if (std::any_of(w.begin(), w.end(), is_digit)) return true;
  if (w.find('-') != std::string::npos) {
    std::size_t b = 0;
    while (b <= w.size()) {
      const auto e = std::min(w.find('-', b), w.size());
      if (e > b && !is_familiar_word(w.substr(b, e - b))) return false;
      b = e + 1;
    }
    return true;
  }
  const auto& set = familiar_words();
  if (set.contains(w)) return true;
  if (w.ends_with("'s")) return set.contains(w.substr(0, w.size() - 2));
  auto has = [&](std::string_view base) { return base.size() >= 2 && set.contains(std::string(base)); };
  auto undouble = [](std::string_view base) {
    return base.size() >= 3 && base[base.size() - 1] == base[base.size() - 2] ? base.substr(0, base.size() - 1)
                                                                              : std::string_view{};
  };
  const std::string_view v = w;
  auto strip = [&](std::string_view suffix) -> std::string_view {
    return v.ends_with(suffix) ? v.substr(0, v.size() - suffix.size()) : std::string_view{};
  };
  if (auto b = strip("ies"); !b.empty() && has(std::string(b) + "y")) return true;
  if (auto b = strip("ied"); !b.empty() && has(std::string(b) + "y")) return true;
  if (auto b = strip("es"); !b.empty() && has(b)) return true;
  if (auto b = strip("s"); !b.empty() && has(b)) return true;
  for (std::string_view suffix : {"ed", "ing", "er", "est"}) {
    const auto b = strip(suffix);
    if (b.empty()) continue;
    if (has(b) || has(std::string(b) + "e") || has(undouble(b))) return true;
  }
  if (auto b = strip("ly"); !b.empty() && has(b)) return true;
  if (auto b = strip("ily"); !b.empty() && has(std::string(b) + "y")) return true;
  if (auto b = strip("d"); !b.empty() && v.ends_with("ed") && has(b)) return true;  // used -> use
  return false;
}

Readability readability(std::string_view note_text) {
  const auto prose = markdown::to_prose(note_text);
  const auto words = prose_words(prose);
  if (words.empty()) throw EmptyText();
  Readability r;
  r.words = words.size();
  r.sentences = std::max<std::size_t>(1, split_sentences(prose).size());
  for (const auto& w : words) {
    for (char c : w) {
      const auto u = static_cast<unsigned char>(c);
      if (is_alpha(c) || is_digit(c) || (u >= 0x80 && (u & 0xC0) != 0x80)) ++r.characters;
    }
    if (!is_familiar_word(w)) ++r.difficult_words;
  }
  const double wps = static_cast<double>(r.words) / static_cast<double>(r.sentences);
  r.ari = 4.71 * (static_cast<double>(r.characters) / static_cast<double>(r.words)) + 0.5 * wps - 21.43;
  const double pct = 100.0 * static_cast<double>(r.difficult_words) / static_cast<double>(r.words);
  r.dale_chall = 0.1579 * pct + 0.0496 * wps + (pct > 5.0 ? 3.6365 : 0.0);
  return r;
}

bool is_entity_token(std::string_view token) {
  const auto t = strip_punct(token);
  if (t.empty()) return false;
  if (entity_lexicon().contains(text::to_lower(t))) return true;
  static const std::regex snake(R"(^[A-Za-z0-9]+(_[A-Za-z0-9]+)+(\(\))?$)");
  static const std::regex dotted(R"(^[A-Za-z_][A-Za-z0-9_]*((\.|::)[A-Za-z_][A-Za-z0-9_]*)+(\(\))?$)");
  static const std::regex call(R"(^[A-Za-z_][A-Za-z0-9_]*\(\)$)");
  const std::string s(t);
  if (std::regex_match(s, snake) || std::regex_match(s, dotted) || std::regex_match(s, call)) return true;
  // CamelCase: letters/digits only, with a lowercase letter followed by an uppercase one.
  if (!std::all_of(s.begin(), s.end(), [](char c) { return is_alpha(c) || is_digit(c); })) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (is_lower(s[i - 1]) && is_upper(s[i])) return true;
  return false;
}

double entity_percentage(std::string_view note_text) {
  const auto prose = markdown::to_prose_keep_code(note_text);
  const auto tokens = ws_tokens(prose);
  if (tokens.empty()) return 0.0;
  std::size_t entities = 0;
  bool in_code = false;
  for (auto t : tokens) {
    const auto ticks = static_cast<std::size_t>(std::count(t.begin(), t.end(), '`'));
    const bool coded = in_code || ticks > 0;
    if (ticks % 2 == 1) in_code = !in_code;
    if (coded || is_entity_token(t)) ++entities;
  }
  return static_cast<double>(entities) / static_cast<double>(tokens.size());
}

bool success(std::string_view note) { return markdown::parse_outline(note).bullets > 0; }

std::size_t note_token_count(std::string_view note) { return count_tokens(markdown::strip_comments(note)); }

MetricReport evaluate_note(std::string_view note, const std::vector<CommitRef>* commits) {
  MetricReport r;
  if (commits && !commits->empty()) r.commit_coverage = commit_coverage(note, *commits);
  r.token_count = note_token_count(note);
  r.information_entropy = information_entropy(note);
  try {
    const auto rd = readability(note);
    r.ari = rd.ari;
    r.dale_chall = rd.dale_chall;
  } catch (const EmptyText&) {
  }
  r.entity_percentage = entity_percentage(note);
  r.success = success(note);
  r.tokenizer = std::string(kTokenizerId);
  return r;
}

std::string to_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["commit_coverage"] = r.commit_coverage ? nlohmann::ordered_json(*r.commit_coverage) : nullptr;
  j["token_count"] = r.token_count;
  j["tokenizer"] = r.tokenizer;
  j["information_entropy"] = r.information_entropy;
  j["ari"] = r.ari ? nlohmann::ordered_json(*r.ari) : nullptr;
  j["dale_chall"] = r.dale_chall ? nlohmann::ordered_json(*r.dale_chall) : nullptr;
  j["entity_percentage"] = r.entity_percentage;
  j["success"] = r.success;
  return j.dump(2);
}

std::string format_table(const std::vector<std::pair<std::string, MetricReport>>& reports) {
  auto num = [](std::optional<double> v, const char* fmt) {
    if (!v) return std::string("n/a");
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, *v);
    return std::string(buf);
  };
  std::vector<std::pair<std::string, std::vector<std::string>>> rows = {
      {"metric", {}}, {"commit coverage", {}}, {"token count", {}}, {"information entropy", {}},
      {"ARI", {}},    {"Dale-Chall", {}},      {"entity %", {}},    {"success", {}}};
  for (const auto& [name, r] : reports) {
    rows[0].second.push_back(name);
    rows[1].second.push_back(r.commit_coverage ? num(*r.commit_coverage * 100.0, "%.1f%%") : "n/a");
    rows[2].second.push_back(std::to_string(r.token_count));
    rows[3].second.push_back(num(r.information_entropy, "%.4f"));
    rows[4].second.push_back(num(r.ari, "%.2f"));
    rows[5].second.push_back(num(r.dale_chall, "%.3f"));
    rows[6].second.push_back(num(r.entity_percentage * 100.0, "%.1f%%"));
    rows[7].second.push_back(r.success ? "yes" : "no");
  }
  std::vector<std::size_t> widths(reports.size() + 1, 0);
  for (const auto& [label, cells] : rows) {
    widths[0] = std::max(widths[0], label.size());
    for (std::size_t i = 0; i < cells.size(); ++i) widths[i + 1] = std::max(widths[i + 1], cells[i].size());
  }
  std::string out;
  for (const auto& [label, cells] : rows) {
    out += label + std::string(widths[0] - label.size() + 2, ' ');
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out += std::string(widths[i + 1] - cells[i].size(), ' ') + cells[i];
      if (i + 1 < cells.size()) out += "  ";
    }
    out += '\n';
  }
  return out;
}

}  // namespace smartnote
