#include "smartnote/features.hpp"

#include <cmath>
#include <map>

#include "smartnote/embedding.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/languages.hpp"
#include "smartnote/tree_model.hpp"

namespace smartnote {
namespace {

const std::map<std::string_view, FeatureKind>& scalar_names() {
  static const std::map<std::string_view, FeatureKind> names = {
      {"added_lines", FeatureKind::AddedLines},
      {"deleted_lines", FeatureKind::DeletedLines},
      {"release_commits", FeatureKind::ReleaseCommits},
      {"release_authors", FeatureKind::ReleaseAuthors},
      {"avg_changeset", FeatureKind::AvgChangeset},
      {"avg_codechurn", FeatureKind::AvgCodechurn},
      {"avg_history_complexity", FeatureKind::AvgHistoryComplexity},
      {"commit_total", FeatureKind::CommitTotal},
      {"contributor_count", FeatureKind::ContributorCount},
      {"star_count", FeatureKind::StarCount},
      {"issue_count", FeatureKind::IssueCount},
      {"pr_count", FeatureKind::PrCount},
      {"comment_count", FeatureKind::CommentCount},
  };
  return names;
}

double count(std::uint64_t v, bool transform) {
  const double d = static_cast<double>(v);
  return transform ? std::log1p(d) : d;
}

double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

FeatureName make_name(FeatureKind kind) {
  FeatureName f;
  f.kind = kind;
  return f;
}

}  // namespace

std::optional<FeatureName> classify_feature_name(std::string_view name) {
  if (const auto it = scalar_names().find(name); it != scalar_names().end()) return make_name(it->second);
  if (name.starts_with("emb_")) {
    const auto digits = name.substr(4);
    if (digits.empty() || digits.size() > 7 || (digits.size() > 1 && digits[0] == '0')) return std::nullopt;
    std::size_t idx = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') return std::nullopt;
      idx = idx * 10 + static_cast<std::size_t>(c - '0');
    }
    auto f = make_name(FeatureKind::Embedding);
    f.index = idx;
    return f;
  }
  if (name.starts_with("lang_") && name.size() > 5) {
    auto f = make_name(FeatureKind::Language);
    f.language = std::string(name.substr(5));
    return f;
  }
  if (name.starts_with("release_type_")) {
    for (auto t : kReleaseTypes) {
      if (name.substr(13) == to_string(t)) {
        auto f = make_name(FeatureKind::ReleaseTypeFlag);
        f.release_type = t;
        return f;
      }
    }
    return std::nullopt;
  }
  if (name.starts_with("domain_")) {
    for (auto d : kProjectDomains) {
      if (name.substr(7) == to_string(d)) {
        auto f = make_name(FeatureKind::DomainFlag);
        f.domain = d;
        return f;
      }
    }
  }
  return std::nullopt;
}

bool is_count_feature(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::AddedLines:
    case FeatureKind::DeletedLines:
    case FeatureKind::ReleaseCommits:
    case FeatureKind::ReleaseAuthors:
    case FeatureKind::CommitTotal:
    case FeatureKind::ContributorCount:
    case FeatureKind::StarCount:
    case FeatureKind::IssueCount:
    case FeatureKind::PrCount:
    case FeatureKind::CommentCount: return true;
    default: return false;
  }
}

std::vector<std::string> default_feature_layout(std::size_t embedding_dim,
                                                const std::vector<std::string>& languages) {
  std::vector<std::string> out;
  out.reserve(embedding_dim + languages.size() + 32);
  for (std::size_t i = 0; i < embedding_dim; ++i) out.push_back("emb_" + std::to_string(i));
  out.emplace_back("added_lines");
  out.emplace_back("deleted_lines");
  for (const auto& l : languages) out.push_back("lang_" + l);
  out.push_back("lang_" + std::string(kOtherLanguage));
  for (auto t : kReleaseTypes) out.push_back("release_type_" + std::string(to_string(t)));
  for (const char* n : {"release_commits", "release_authors", "avg_changeset", "avg_codechurn",
                        "avg_history_complexity", "commit_total", "contributor_count", "star_count",
                        "issue_count", "pr_count", "comment_count"})
    out.emplace_back(n);
  for (auto d : kProjectDomains) out.push_back("domain_" + std::string(to_string(d)));
  return out;
}

std::vector<double> embed_commit(const Commit& commit, const TreeModel& model, const EmbeddingSidecar* sidecar) {
  if (sidecar) return sidecar->get(commit.sha, model.metadata.embedding_dim);
  return embed_message(commit.message, model.metadata.embedder_id, model.metadata.embedding_dim);
}

std::vector<double> assemble_features(const Commit& commit, std::span<const double> embedding,
                                      const ReleaseContext& release, const ProjectContext& project,
                                      const TreeModel& model) {
  const bool tf = model.metadata.count_transform;
  const ProjectDomain domain = project.domain.value_or(ProjectDomain::SoftwareTools);

  // Languages of the commit that the layout has no flag for fold into Other.
  bool other = false;
  std::vector<FeatureName> parsed;
  parsed.reserve(model.feature_layout.size());
  for (const auto& name : model.feature_layout) {
    auto f = classify_feature_name(name);
    if (!f) throw LayoutMismatch("cannot produce feature '" + name + "'");
    parsed.push_back(std::move(*f));
  }
  for (const auto& lang : commit.languages) {
    bool named = false;
    for (const auto& f : parsed)
      if (f.kind == FeatureKind::Language && f.language == lang && lang != kOtherLanguage) named = true;
    if (!named) other = true;
  }

  std::vector<double> x;
  x.reserve(parsed.size());
  for (const auto& f : parsed) {
    double v = 0.0;
    switch (f.kind) {
      case FeatureKind::Embedding:
        if (f.index >= embedding.size())
          throw LayoutMismatch("embedding has " + std::to_string(embedding.size()) + " components, layout needs emb_" +
                               std::to_string(f.index));
        v = embedding[f.index];
        break;
      case FeatureKind::AddedLines: v = count(commit.added_lines, tf); break;
      case FeatureKind::DeletedLines: v = count(commit.deleted_lines, tf); break;
      case FeatureKind::Language:
        v = f.language == kOtherLanguage ? (other ? 1.0 : 0.0) : (commit.languages.contains(f.language) ? 1.0 : 0.0);
        break;
      case FeatureKind::ReleaseTypeFlag: v = release.release_type == f.release_type ? 1.0 : 0.0; break;
      case FeatureKind::ReleaseCommits: v = count(release.commit_count, tf); break;
      case FeatureKind::ReleaseAuthors: v = count(release.author_count, tf); break;
      case FeatureKind::AvgChangeset: v = release.avg_changeset; break;
      case FeatureKind::AvgCodechurn: v = release.avg_codechurn; break;
      case FeatureKind::AvgHistoryComplexity: v = release.avg_history_complexity; break;
      case FeatureKind::CommitTotal: v = count(project.commit_total, tf); break;
      case FeatureKind::ContributorCount: v = count(project.contributor_count, tf); break;
      case FeatureKind::StarCount: v = count(project.star_count, tf); break;
      case FeatureKind::IssueCount: v = count(project.issue_count, tf); break;
      case FeatureKind::PrCount: v = count(project.pr_count, tf); break;
      case FeatureKind::CommentCount: v = count(project.comment_count, tf); break;
      case FeatureKind::DomainFlag: v = domain == f.domain ? 1.0 : 0.0; break;
    }
    x.push_back(finite_or_zero(v));
  }
  return x;
}

}  // namespace smartnote
