#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace smartnote {

/// Extra spellings per label, matched like the label itself.
using LabelAliases = std::map<std::string, std::vector<std::string>>;

/// First allowed label mentioned in `raw`. Matching is case-insensitive and
/// word-bounded on a normalised form in which '&' reads as "and" and plural
/// word endings are folded ("Libraries & Frameworks" matches "library and
/// framework"). The earliest mention wins; at equal positions the longer
/// label wins. Returns the label as spelled in `allowed_labels`.
/// Throws std::invalid_argument for an empty label set, NoLabelFound when
/// nothing matches.
std::string parse_classification(std::string_view raw, const std::vector<std::string>& allowed_labels,
                                 const LabelAliases& aliases = {});

}  // namespace smartnote
