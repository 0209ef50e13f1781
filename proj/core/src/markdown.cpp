#include "smartnote/markdown.hpp"

#include <regex>

#include "smartnote/text.hpp"

namespace smartnote::markdown {
namespace {

const std::regex& heading_re() {
  static const std::regex re(R"(^ {0,3}(#{1,6})(?:[ \t]+(.*?))?[ \t]*#*[ \t]*$)");
  return re;
}

const std::regex& item_re() {
  static const std::regex re(R"(^( *)([-*+]|[0-9]{1,9}[.)])(?:[ \t]+(.*))?$)");
  return re;
}

bool is_fence(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && i < 3 && line[i] == ' ') ++i;
  const auto rest = line.substr(i);
  return rest.starts_with("```") || rest.starts_with("~~~");
}

bool is_thematic_break(std::string_view line) {
  std::size_t marks = 0;
  char mark = 0;
  for (char c : line) {
    if (c == ' ' || c == '\t') continue;
    if (c != '-' && c != '*' && c != '_') return false;
    if (mark && c != mark) return false;
    mark = c;
    ++marks;
  }
  return marks >= 3;
}

enum class LineKind { Blank, Heading, Item, Text };

struct Line {
  LineKind kind = LineKind::Blank;
  int level = 0;       // heading level
  std::size_t indent = 0;  // item indent
  std::string content;
};

// Classifies non-code lines of a comment-free document.
template <typename Fn>
void for_each_line(std::string_view md, Fn fn) {
  bool in_fence = false;
  for (auto raw : text::split_lines(md)) {
    std::string line(raw);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_fence(line)) {
      in_fence = !in_fence;
      continue;
    }
    if (in_fence) continue;
    Line l;
    std::smatch m;
    if (text::trim(line).empty()) {
      l.kind = LineKind::Blank;
    } else if (std::regex_match(line, m, heading_re())) {
      l.kind = LineKind::Heading;
      l.level = static_cast<int>(m[1].length());
      l.content = m[2].matched ? m[2].str() : "";
    } else if (!is_thematic_break(line) && std::regex_match(line, m, item_re())) {
      l.kind = LineKind::Item;
      l.indent = static_cast<std::size_t>(m[1].length());
      l.content = m[3].matched ? m[3].str() : "";
    } else {
      l.kind = LineKind::Text;
      l.content = line;
    }
    fn(l);
  }
}

std::string clean_inline(std::string s, bool keep_code) {
  static const std::regex image(R"(!\[[^\]]*\]\([^)]*\))");
  static const std::regex link(R"(\[([^\]]*)\]\([^)]*\))");
  static const std::regex autolink(R"(<https?://[^>]*>)");
  static const std::regex url(R"(https?://\S+)");
  static const std::regex tag(R"(</?[A-Za-z][^>]*>)");
  static const std::regex code(R"(`[^`]*`)");
  static const std::regex strong(R"(\*\*|__|~~)");
  static const std::regex star(R"(\*)");
  static const std::regex underscore(R"((^|[^A-Za-z0-9])_+|_+([^A-Za-z0-9]|$))");
  s = std::regex_replace(s, image, "");
  s = std::regex_replace(s, link, "$1");
  s = std::regex_replace(s, autolink, "");
  s = std::regex_replace(s, url, "");
  s = std::regex_replace(s, tag, "");
  if (!keep_code) s = std::regex_replace(s, code, "");
  s = std::regex_replace(s, strong, "");
  s = std::regex_replace(s, star, "");
  if (!keep_code) s = std::regex_replace(s, underscore, "$1$2");
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      space = !out.empty();
    } else {
      if (space) out += ' ';
      space = false;
      out += c;
    }
  }
  return out;
}

std::string prose(std::string_view md, bool keep_code) {
  std::string out;
  for_each_line(strip_comments(md), [&](const Line& l) {
    if (l.kind == LineKind::Blank) return;
    std::string content = l.content;
    if (l.kind == LineKind::Text) {
      auto t = text::trim(content);
      while (!t.empty() && t.front() == '>') t = text::trim(t.substr(1));
      if (is_thematic_break(t)) return;
      content = std::string(t);
    }
    auto cleaned = clean_inline(std::move(content), keep_code);
    if (cleaned.empty()) return;
    out += cleaned;
    out += '\n';
  });
  return out;
}

}  // namespace

std::string strip_comments(std::string_view md) {
  std::string out;
  std::size_t pos = 0;
  while (pos < md.size()) {
    const auto open = md.find("<!--", pos);
    if (open == std::string_view::npos) {
      out.append(md.substr(pos));
      break;
    }
    out.append(md.substr(pos, open - pos));
    const auto close = md.find("-->", open + 4);
    if (close == std::string_view::npos) break;
    pos = close + 3;
  }
  return out;
}

Outline parse_outline(std::string_view md) {
  Outline o;
  bool open = false;  // an H2/H3 is the current category; an H1 closes it
  for_each_line(strip_comments(md), [&](const Line& l) {
    if (l.kind == LineKind::Heading) {
      if (l.level == 2 || l.level == 3) {
        o.categories.push_back({std::string(text::trim(l.content)), l.level, 0});
        open = true;
      } else if (l.level == 1) {
        open = false;
      }
      return;
    }
    if (l.kind != LineKind::Item || text::trim(l.content).empty()) return;
    ++o.bullets;
    if (l.indent > 1) return;
    if (open) {
      ++o.categories.back().items;
    } else {
      ++o.uncategorised;
    }
  });
  return o;
}

std::string to_prose(std::string_view md) { return prose(md, false); }
std::string to_prose_keep_code(std::string_view md) { return prose(md, true); }

}  // namespace smartnote::markdown
