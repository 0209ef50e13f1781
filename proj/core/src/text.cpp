#include "smartnote/text.hpp"

#include <cctype>

namespace smartnote::text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto nl = s.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < s.size()) lines.push_back(s.substr(start));
      break;
    }
    lines.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  }
  return true;
}

std::string title_of(std::string_view message) {
  const auto body = trim(message);
  const auto nl = body.find('\n');
  return std::string(trim(body.substr(0, nl)));
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : s) {
    if (is_word_byte(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string replace_identifier(std::string_view s, std::string_view from, std::string_view to) {
  if (from.empty()) return std::string(s);
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto pos = s.find(from, i);
    if (pos == std::string_view::npos) {
      out.append(s.substr(i));
      break;
    }
    const bool left_ok = pos == 0 || !is_identifier_byte(static_cast<unsigned char>(s[pos - 1]));
    const auto end = pos + from.size();
    const bool right_ok = end == s.size() || !is_identifier_byte(static_cast<unsigned char>(s[end]));
    out.append(s.substr(i, pos - i));
    if (left_ok && right_ok) {
      out.append(to);
    } else {
      out.append(from);
    }
    i = end;
  }
  return out;
}

bool contains_identifier(std::string_view s, std::string_view name) {
  if (name.empty()) return false;
  for (auto pos = s.find(name); pos != std::string_view::npos; pos = s.find(name, pos + 1)) {
    const auto end = pos + name.size();
    if ((pos == 0 || !is_identifier_byte(static_cast<unsigned char>(s[pos - 1]))) &&
        (end == s.size() || !is_identifier_byte(static_cast<unsigned char>(s[end]))))
      return true;
  }
  return false;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::size_t word_count(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (unsigned char c : s) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

}  // namespace smartnote::text
