#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "smartnote/domain.hpp"
#include "smartnote/prompt.hpp"
#include "smartnote/provider.hpp"
#include "smartnote/repo_miner.hpp"
#include "smartnote/summariser.hpp"

namespace smartnote {

class Diagnostics;

struct Section {
  std::string heading;
  std::vector<ReleaseNoteEntry> entries;
};

struct SettingRecord {
  std::string key;
  std::string value;
  std::string source;  // cli, config, inferred or default
};

struct NoteMetadata {
  std::vector<SettingRecord> settings;
  std::string generated_at;  // ISO-8601 UTC
  std::vector<std::string> warnings;
  std::size_t dropped_entries = 0;
  std::map<std::string, std::string> extra;  // provider, seed, tool version, ...
};

struct ReleaseNote {
  std::string title;
  std::vector<Section> sections;
  NoteMetadata metadata;
  bool headings = true;  // false renders one flat bullet list
};

// --- headings ---------------------------------------------------------------

inline constexpr std::string_view kBreakingHeading = "Breaking Changes";
inline constexpr std::string_view kDependenciesHeading = "Dependencies";
inline constexpr std::string_view kPriorityHeading = "Changes";

/// feat Features, fix Bug Fixes, docs Documentation, style Styling,
/// refactor Refactoring, perf Performance, test Tests, build Build System,
/// ci Continuous Integration, chore Chores, revert Reverts. Unknown labels
/// map to "Other Changes".
std::string_view category_heading(std::string_view label);

/// Section order used by reorder_sections. Headings not listed here sit
/// between "Tests" and "Build System", in their incoming order.
const std::vector<std::string>& section_priority();

// --- operations -----------------------------------------------------------

/// ChangeType: sections per heading (breaking changes and dependency bumps
/// get their own), in order of first appearance. AffectedModule: sections
/// per top-level directory of the files an entry touches (the directory
/// holding most of its files, "root" for top-level files). ChangePriority:
/// one section, descending significance. Entries keep commit order inside a
/// section. Throws NoEntries.
std::vector<Section> organise(const std::vector<ReleaseNoteEntry>& entries, Structure structure);

struct ComposerContext {
  LlmProvider* provider = nullptr;
  const TemplateLibrary* templates = nullptr;
  CompletionParams params;
  Diagnostics* diag = nullptr;
};

/// Lowercased words of a summary minus stopwords, generic change verbs and
/// attribution tokens.
std::set<std::string> content_words(std::string_view summary);
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

inline constexpr double kMergeSimilarity = 0.5;

/// Per section, clusters entries whose content-word Jaccard similarity is
/// at least 0.5 (single linkage) and asks the LLM (`merge_entries`) for one
/// summary per cluster. A merged entry keeps every member, the maximum
/// significance and the position of its earliest member. A provider failure
/// leaves that section unmerged. ChangePriority returns the input unchanged.
std::vector<Section> merge_related(std::vector<Section> sections, Structure structure, const ComposerContext& ctx);

/// Rewrites superseded identifiers to their final names on identifier
/// boundaries. A summary that already names the final identifier is left
/// alone for that pair ("Renamed a to b").
std::vector<Section> update_entity_mentions(std::vector<Section> sections, const RenameMap& renames);

/// Which headings a domain condenses into a single entry, and from how many
/// entries on.
struct DomainProfile {
  std::vector<std::string> condense;
  std::size_t condense_min_entries = 3;
};

using DomainProfiles = std::map<ProjectDomain, DomainProfile>;

/// JSON: {"<ProjectDomain>": {"condense": [...], "condense_min_entries": n}}.
DomainProfiles parse_domain_profiles(std::string_view json_text);
DomainProfiles load_domain_profiles(const std::filesystem::path& path);
/// The bundled profiles asset.
const DomainProfiles& default_domain_profiles();

struct PersonaliseResult {
  std::vector<Section> sections;
  std::size_t dropped = 0;
  bool guarded = false;  // everything fell below the MST; one entry was kept
};

/// Drops entries with significance below `mst`; if that removes everything,
/// keeps the single most significant entry and warns. Then, for ChangeType
/// notes, sections listed in the domain profile with enough entries are
/// condensed through `condense_section` into one entry.
PersonaliseResult personalise(std::vector<Section> sections, double mst, Structure structure,
                              const DomainProfile& profile, const ComposerContext& ctx);

/// Stable sort of sections by section_priority(). A permutation, idempotent.
std::vector<Section> reorder_sections(std::vector<Section> sections);

/// Optional LLM pass: asks `reorder_sections` for a heading order and uses
/// it when the answer is a permutation of the headings; otherwise keeps the
/// table order.
std::vector<Section> reorder_sections_llm(std::vector<Section> sections, const ComposerContext& ctx);

/// Attribution for an entry: "#N" for each linked PR, the 7-char short sha
/// for members without one. Items already present in the summary are left out.
std::vector<std::string> attribution(const ReleaseNoteEntry& entry);

/// Markdown: "# title", "## heading" per section, "- summary (refs)" per
/// entry, then `<!-- smartnote: {json} -->` holding the metadata.
std::string render_markdown(const ReleaseNote& note);

}  // namespace smartnote
