#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "smartnote/domain.hpp"

namespace smartnote {

using Timestamp = std::chrono::sys_seconds;

struct FilePatch {
  std::string path;       // new path (old path for deletions)
  std::string old_path;   // differs from path only for renames
  std::string diff_text;  // the whole per-file section of `git log -p`, bytes untouched
  std::string extension;  // lowercased, without dot; empty if none
  std::optional<std::string> language;
  std::uint64_t added_lines = 0;
  std::uint64_t deleted_lines = 0;
};

struct Commit {
  std::string sha;  // 40 lowercase hex
  std::vector<std::string> parents;
  std::string author;
  std::string author_email;
  std::string committer;
  Timestamp timestamp{};
  std::string message;
  std::vector<FilePatch> patches;
  std::uint64_t added_lines = 0;
  std::uint64_t deleted_lines = 0;
  std::set<std::string> languages;
  std::optional<int> pr_number;
  MergeKind merge_kind = MergeKind::None;

  bool is_merge() const noexcept { return parents.size() > 1; }
};

struct ReleaseContext {
  ReleaseType release_type = ReleaseType::Unknown;
  std::uint64_t commit_count = 0;
  std::uint64_t author_count = 0;
  std::uint64_t committer_count = 0;
  double avg_changeset = 0.0;
  double avg_codechurn = 0.0;
  double avg_history_complexity = 0.0;
};

struct ProjectContext {
  std::string name;
  std::string description;
  std::string readme;
  std::string previous_version;
  std::string new_version;
  std::string remote_url;  // web URL of the hosted repository, if known
  std::uint64_t commit_total = 0;
  std::uint64_t contributor_count = 0;
  std::uint64_t star_count = 0;
  std::uint64_t issue_count = 0;
  std::uint64_t pr_count = 0;
  std::uint64_t comment_count = 0;
  std::optional<ProjectDomain> domain;
  bool degraded = false;  // remote data unavailable, counts are neutral defaults
};

/// old identifier -> final identifier, already resolved through chains.
using RenameMap = std::map<std::string, std::string>;

bool is_valid_sha(std::string_view sha) noexcept;

/// Commits reachable from `to_tag` but not from `from_tag`, oldest first.
/// An orphan or off-tree `to_tag` is resolved directly, so its own history
/// is returned. Throws NotARepository, TagNotFound or EmptyRange.
std::vector<Commit> resolve_range(const std::filesystem::path& repo, const std::string& from_tag,
                                  const std::string& to_tag);

/// Fills pr_number and merge_kind from message patterns:
///   * title ending in "(#N)": squash, or rebase when several commits of the
///     list carry the same N;
///   * merge commit titled "Merge pull request #N ...": the merge and every
///     commit only reachable through its second parent get N (merge-commit).
/// Explicit title trailers win over lineage. Recomputed from scratch, so the
/// operation is idempotent.
std::vector<Commit> detect_pr_links(std::vector<Commit> commits);

/// Parses a "(#N)" title suffix.
std::optional<int> parse_pr_suffix(std::string_view title);
/// Parses "Merge pull request #N from ...".
std::optional<int> parse_merge_pr_title(std::string_view title);

/// Release-scale features. Throws EmptyRange for an empty list.
ReleaseContext compute_release_context(const std::vector<Commit>& commits,
                                       std::string_view previous_version,
                                       std::string_view new_version);

/// Base-2 Shannon entropy of per-file modification counts across the range.
double history_complexity(const std::vector<Commit>& commits);

/// Project facts available from the local checkout: name, README at the
/// release tag, total commit count and contributor count up to it, and the
/// web URL derived from the origin remote.
ProjectContext mine_local_project(const std::filesystem::path& repo, const std::string& from_tag,
                                  const std::string& to_tag);

/// Resolves a tag to its commit sha. Throws TagNotFound.
std::string resolve_tag(const std::filesystem::path& repo, const std::string& tag);

/// Identifier renames visible in the range: file renames (stem to stem) and
/// single-identifier substitutions between paired removed/added lines.
RenameMap extract_renames(const std::vector<Commit>& commits);

/// Parses the output of `git log -p` produced with the miner's format. Exposed
/// for tests.
std::vector<Commit> parse_git_log(std::string_view raw);

/// Splits a commit's diff into per-file patches.
std::vector<FilePatch> parse_patches(std::string_view diff);

}  // namespace smartnote
