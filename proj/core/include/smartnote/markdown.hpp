#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace smartnote::markdown {

struct Category {
  std::string heading;
  int level = 2;
  std::size_t items = 0;  // top-level bullets under this heading
};

struct Outline {
  std::vector<Category> categories;  // H2 and H3 headings, in order
  std::size_t bullets = 0;           // non-empty bullets anywhere (any depth)
  std::size_t uncategorised = 0;     // top-level bullets before the first H2/H3
};

/// Scans ATX headings and list items, ignoring fenced code blocks and HTML
/// comments. A top-level item starts at column 0 or 1; deeper ones belong to
/// the item above and are not counted as category items.
Outline parse_outline(std::string_view md);

/// Removes HTML comments (which may span lines).
std::string strip_comments(std::string_view md);

/// Plain prose for readability scoring: comments, fenced code, inline code,
/// images, link targets, bare URLs, heading and list markers and emphasis
/// markers are removed. Each block (heading, list item, paragraph line)
/// becomes one line.
std::string to_prose(std::string_view md);

/// Like to_prose but keeps inline code spans with their backticks, for
/// entity matching.
std::string to_prose_keep_code(std::string_view md);

}  // namespace smartnote::markdown
