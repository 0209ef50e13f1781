#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smartnote/domain.hpp"
#include "smartnote/repo_miner.hpp"

namespace smartnote {

class EmbeddingSidecar;
struct TreeModel;

// Feature names understood in a model layout:
//   emb_<i>                                  embedding component i
//   added_lines, deleted_lines               per commit                 (count)
//   lang_<Language>, lang_Other              0/1 per language touched
//   release_type_<Major|Minor|Patch|Unknown> one-hot
//   release_commits, release_authors         per release                (count)
//   avg_changeset, avg_codechurn, avg_history_complexity
//   commit_total, contributor_count, star_count, issue_count,
//   pr_count, comment_count                  per project                (count)
//   domain_<ProjectDomain>                   one-hot
// Count features get log1p when the model metadata asks for it.
enum class FeatureKind {
  Embedding,
  AddedLines,
  DeletedLines,
  Language,
  ReleaseTypeFlag,
  ReleaseCommits,
  ReleaseAuthors,
  AvgChangeset,
  AvgCodechurn,
  AvgHistoryComplexity,
  CommitTotal,
  ContributorCount,
  StarCount,
  IssueCount,
  PrCount,
  CommentCount,
  DomainFlag,
};

struct FeatureName {
  FeatureKind kind = FeatureKind::Embedding;
  std::size_t index = 0;           // Embedding
  std::string language;            // Language; "Other" for the catch-all
  ReleaseType release_type{};      // ReleaseTypeFlag
  ProjectDomain domain{};          // DomainFlag
};

std::optional<FeatureName> classify_feature_name(std::string_view name);
bool is_count_feature(FeatureKind kind);

/// The canonical layout used by the bundled default models.
std::vector<std::string> default_feature_layout(std::size_t embedding_dim,
                                                const std::vector<std::string>& languages);

/// Embedding for a commit as the model expects it: from the sidecar when
/// one is given, otherwise from the model's built-in embedder.
std::vector<double> embed_commit(const Commit& commit, const TreeModel& model, const EmbeddingSidecar* sidecar);

/// Lays features out exactly as `model.feature_layout`. Languages the layout
/// does not name set lang_Other (if present). The domain comes from
/// `project.domain` (SoftwareTools when unset). Throws LayoutMismatch if the
/// layout names a feature this build cannot produce, or if `embedding` is
/// shorter than an emb_ index.
std::vector<double> assemble_features(const Commit& commit, std::span<const double> embedding,
                                      const ReleaseContext& release, const ProjectContext& project,
                                      const TreeModel& model);

}  // namespace smartnote
