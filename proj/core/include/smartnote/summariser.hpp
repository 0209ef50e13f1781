#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smartnote/analyser.hpp"
#include "smartnote/budget.hpp"
#include "smartnote/domain.hpp"
#include "smartnote/prompt.hpp"
#include "smartnote/provider.hpp"
#include "smartnote/repo_miner.hpp"

namespace smartnote {

class Diagnostics;

struct Member {
  std::string sha;
  std::optional<int> pr;

  bool operator==(const Member&) const = default;
};

struct Changeset {
  Timestamp datetime{};
  std::string author;
  std::string title;    // title of the defining commit
  std::string message;  // member messages, merge commits left out when others exist
  double significance = 0.0;
  std::string change_type;
  std::string patches;  // budgeted diff text
  std::vector<Member> members;
  std::optional<int> pr_number;  // shared by all members of a group
  std::vector<std::string> paths;
  bool breaking = false;
  bool dependency = false;
  std::size_t order = 0;  // index of the first member in the commit list
};

struct ReleaseNoteEntry {
  std::string summary;
  std::vector<Member> members;
  std::optional<int> pr_number;
  std::string author;
  Timestamp date{};
  double significance = 0.0;
  std::string category;
  std::vector<std::string> paths;
  bool breaking = false;
  bool dependency = false;
  std::size_t order = 0;

  std::vector<std::string> member_shas() const;
};

/// True for dependency bumps: a `deps` scope, or titles such as
/// "Bump serde from 1.0.1 to 1.0.2" and "Update dependency x to v2".
bool is_dependency_update(std::string_view message);

/// True for a '!' marker or a BREAKING CHANGE footer.
bool is_breaking_change(std::string_view message);

/// group=false: one changeset per commit. group=true: commits sharing a
/// pr_number become one changeset with significance = max of members and
/// change_type = modal category (ties go to the category of the most
/// significant member). Patches are concatenated in commit order and
/// budgeted again. Output follows the order of each changeset's first
/// commit. `analyses` must align with `commits` by index and sha.
std::vector<Changeset> pack_changesets(const std::vector<CommitAnalysis>& analyses,
                                       const std::vector<Commit>& commits, bool group,
                                       std::size_t diff_budget = kDefaultDiffBudget,
                                       Diagnostics* diag = nullptr);

inline constexpr std::size_t kMaxSummaryWords = 60;

/// Cuts text longer than `max_words` words at the last sentence end inside
/// the limit, or at the limit itself with a closing period when no sentence
/// ends there. Returns the input unchanged when it fits.
std::string cap_words(std::string_view text, std::size_t max_words = kMaxSummaryWords);

struct SummariserContext {
  LlmProvider* provider = nullptr;
  const TemplateLibrary* templates = nullptr;
  CompletionParams params;
  Diagnostics* diag = nullptr;
};

/// Expository: the changeset title verbatim, without an LLM call. Otherwise
/// renders `summarise_changeset` and asks the provider. ProviderError is
/// rethrown with the changeset sha attached.
ReleaseNoteEntry summarise_changeset(const Changeset& cs, WritingStyle style, const SummariserContext& ctx);

/// summarise_changeset over all changesets with bounded parallelism,
/// results in changeset order.
std::vector<ReleaseNoteEntry> summarise_all(const std::vector<Changeset>& changesets, WritingStyle style,
                                            const SummariserContext& ctx, std::size_t parallelism = 4);

/// Instruction text handed to templates for a writing style.
std::string style_instruction(WritingStyle style);

}  // namespace smartnote
