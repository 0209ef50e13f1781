#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smartnote/embedding.hpp"
#include "smartnote/repo_miner.hpp"
#include "smartnote/tree_model.hpp"

namespace smartnote {

class Diagnostics;

struct CommitAnalysis {
  std::string sha;
  std::string category;
  double category_confidence = 0.0;
  double significance = 0.0;
  bool fallback = false;  // analysis failed; defaults were used
};

inline constexpr std::string_view kFallbackCategory = "chore";
inline constexpr double kFallbackSignificance = 0.05;

/// Runs the category and significance models over commits. Immutable after
/// construction; safe to share between threads.
class CommitAnalyser {
 public:
  CommitAnalyser(TreeModel category, TreeModel significance, const EmbeddingSidecar* sidecar = nullptr);

  /// Bundled default models from the asset directory.
  static CommitAnalyser load_default(const EmbeddingSidecar* sidecar = nullptr);
  static CommitAnalyser load(const std::filesystem::path& category_model,
                             const std::filesystem::path& significance_model,
                             const EmbeddingSidecar* sidecar = nullptr);

  /// Throws Error subclasses on failure.
  CommitAnalysis analyse(const Commit& commit, const ReleaseContext& release, const ProjectContext& project) const;

  /// Per-commit analysis in input order. A commit whose analysis throws gets
  /// chore / 0.05 with `fallback` set and a warning in `diag`.
  std::vector<CommitAnalysis> analyse_all(const std::vector<Commit>& commits, const ReleaseContext& release,
                                          const ProjectContext& project, std::size_t parallelism = 4,
                                          Diagnostics* diag = nullptr) const;

  const TreeModel& category_model() const noexcept { return category_; }
  const TreeModel& significance_model() const noexcept { return significance_; }

 private:
  TreeModel category_;
  TreeModel significance_;
  const EmbeddingSidecar* sidecar_;
};

}  // namespace smartnote
