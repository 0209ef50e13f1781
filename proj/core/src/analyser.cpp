#include "smartnote/analyser.hpp"

#include "smartnote/assets.hpp"
#include "smartnote/diagnostics.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/features.hpp"
#include "smartnote/parallel.hpp"

namespace smartnote {

CommitAnalyser::CommitAnalyser(TreeModel category, TreeModel significance, const EmbeddingSidecar* sidecar)
    : category_(std::move(category)), significance_(std::move(significance)), sidecar_(sidecar) {
  if (category_.task != ModelTask::Category) throw TaskMismatch("first model must be a category model");
  if (significance_.task != ModelTask::Significance) throw TaskMismatch("second model must be a significance model");
  category_.validate();
  significance_.validate();
}

CommitAnalyser CommitAnalyser::load_default(const EmbeddingSidecar* sidecar) {
  return load(asset_path("models/category.json"), asset_path("models/significance.json"), sidecar);
}

CommitAnalyser CommitAnalyser::load(const std::filesystem::path& category_model,
                                    const std::filesystem::path& significance_model,
                                    const EmbeddingSidecar* sidecar) {
  return CommitAnalyser(load_model(category_model), load_model(significance_model), sidecar);
}

CommitAnalysis CommitAnalyser::analyse(const Commit& commit, const ReleaseContext& release,
                                       const ProjectContext& project) const {
  CommitAnalysis out;
  out.sha = commit.sha;
  const auto cat_emb = embed_commit(commit, category_, sidecar_);
  const auto cat = predict_category(assemble_features(commit, cat_emb, release, project, category_), category_);
  out.category = cat.label;
  out.category_confidence = cat.confidence;
  const bool same_embedder = category_.metadata.embedder_id == significance_.metadata.embedder_id &&
                             category_.metadata.embedding_dim == significance_.metadata.embedding_dim;
  const auto sig_emb = same_embedder ? cat_emb : embed_commit(commit, significance_, sidecar_);
  out.significance =
      predict_significance(assemble_features(commit, sig_emb, release, project, significance_), significance_);
  return out;
}

std::vector<CommitAnalysis> CommitAnalyser::analyse_all(const std::vector<Commit>& commits,
                                                        const ReleaseContext& release,
                                                        const ProjectContext& project, std::size_t parallelism,
                                                        Diagnostics* diag) const {
  return parallel_map(commits.size(), parallelism, [&](std::size_t i) {
    const auto& c = commits[i];
    try {
      return analyse(c, release, project);
    } catch (const Error& e) {
      if (diag) diag->warn("analysis:" + c.sha, "analysis failed for " + c.sha.substr(0, 7) + ": " + e.what());
      CommitAnalysis fb;
      fb.sha = c.sha;
      fb.category = std::string(kFallbackCategory);
      fb.significance = kFallbackSignificance;
      fb.fallback = true;
      return fb;
    }
  });
}

}  // namespace smartnote
