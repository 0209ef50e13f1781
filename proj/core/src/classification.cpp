#include "smartnote/classification.hpp"

#include <optional>
#include <stdexcept>

#include "smartnote/errors.hpp"
#include "smartnote/text.hpp"

namespace smartnote {
namespace {

std::string fold_word(std::string w) {
  if (w.size() > 4 && w.ends_with("ies")) return w.substr(0, w.size() - 3) + "y";
  if (w.size() > 3 && w.ends_with("s") && !w.ends_with("ss")) w.pop_back();
  return w;
}

std::vector<std::string> normalised_words(std::string_view s) {
  std::string expanded;
  for (char c : s) {
    if (c == '&') {
      expanded += " and ";
    } else {
      expanded += c;
    }
  }
  auto ws = text::words(expanded);
  for (auto& w : ws) w = fold_word(std::move(w));
  return ws;
}

std::optional<std::size_t> find_sequence(const std::vector<std::string>& hay,
                                         const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > hay.size()) return std::nullopt;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size() && match; ++j) match = hay[i + j] == needle[j];
    if (match) return i;
  }
  return std::nullopt;
}

}  // namespace

std::string parse_classification(std::string_view raw, const std::vector<std::string>& allowed_labels,
                                 const LabelAliases& aliases) {
  if (allowed_labels.empty()) throw std::invalid_argument("parse_classification: no allowed labels");
  const auto hay = normalised_words(raw);

  const std::string* best = nullptr;
  std::size_t best_pos = 0, best_len = 0;
  auto consider = [&](const std::string& label, std::string_view spelling) {
    const auto needle = normalised_words(spelling);
    const auto pos = find_sequence(hay, needle);
    if (!pos) return;
    if (!best || *pos < best_pos || (*pos == best_pos && needle.size() > best_len)) {
      best = &label;
      best_pos = *pos;
      best_len = needle.size();
    }
  };
  for (const auto& label : allowed_labels) {
    consider(label, label);
    if (const auto it = aliases.find(label); it != aliases.end())
      for (const auto& alias : it->second) consider(label, alias);
  }
  if (!best) throw NoLabelFound(std::string(raw));
  return *best;
}

}  // namespace smartnote
