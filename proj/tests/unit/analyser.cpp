#include "doctest.h"
#include "smartnote/analyser.hpp"
#include "smartnote/assets.hpp"
#include "smartnote/diagnostics.hpp"
#include "smartnote/errors.hpp"
#include "test_support.hpp"

using namespace smartnote;
using namespace smartnote::testing;

namespace {

struct SampleRange {
  std::vector<Commit> commits;
  ReleaseContext release;
  ProjectContext project;
};

const SampleRange& sample() {
  static const SampleRange s = [] {
    SampleRange r;
    r.commits = detect_pr_links(resolve_range(fixture_repo("sample"), "v1.0.0", "v1.1.0"));
    r.release = compute_release_context(r.commits, "v1.0.0", "v1.1.0");
    r.project = mine_local_project(fixture_repo("sample"), "v1.0.0", "v1.1.0");
    r.project.domain = ProjectDomain::LibrariesAndFrameworks;
    return r;
  }();
  return s;
}

const Commit& by_title(const std::string& prefix) {
  for (const auto& c : sample().commits)
    if (c.message.starts_with(prefix)) return c;
  throw std::runtime_error("no commit " + prefix);
}

}  // namespace

TEST_SUITE("analyser") {
  TEST_CASE("bundled models load and agree on the embedder") {
    const auto a = CommitAnalyser::load_default();
    CHECK(a.category_model().task == ModelTask::Category);
    CHECK(a.significance_model().task == ModelTask::Significance);
    CHECK(a.category_model().metadata.embedder_id == a.significance_model().metadata.embedder_id);
  }

  TEST_CASE("outputs are well formed") {
    const auto a = CommitAnalyser::load_default();
    const auto& s = sample();
    const auto out = a.analyse_all(s.commits, s.release, s.project);
    REQUIRE(out.size() == s.commits.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].sha == s.commits[i].sha);
      CHECK(is_conventional_type(out[i].category));
      CHECK(out[i].significance > 0.0);
      CHECK(out[i].significance < 1.0);
      CHECK(out[i].category_confidence > 0.0);
      CHECK(out[i].category_confidence <= 1.0);
      CHECK_FALSE(out[i].fallback);
    }
  }

  TEST_CASE("bundled models separate features from chores") {
    const auto a = CommitAnalyser::load_default();
    const auto& s = sample();
    const auto feat = a.analyse(by_title("feat(cache): add lookup cache"), s.release, s.project);
    const auto typo = a.analyse(by_title("docs: fix typo"), s.release, s.project);
    CHECK(feat.category == "feat");
    CHECK(typo.category == "docs");
    CHECK(feat.significance > typo.significance);
  }

  TEST_CASE("parallelism does not change results") {
    const auto a = CommitAnalyser::load_default();
    const auto& s = sample();
    const auto one = a.analyse_all(s.commits, s.release, s.project, 1);
    const auto many = a.analyse_all(s.commits, s.release, s.project, 8);
    for (std::size_t i = 0; i < one.size(); ++i) {
      CHECK(one[i].category == many[i].category);
      CHECK(one[i].significance == many[i].significance);
    }
  }

  TEST_CASE("a missing precomputed embedding falls back") {
    const auto side = EmbeddingSidecar::parse("{\"sha\": \"" + std::string(40, 'f') + "\", \"embedding\": [" +
                                              [] {
                                                std::string s = "0";
                                                for (int i = 1; i < 768; ++i) s += ",0";
                                                return s;
                                              }() +
                                              "]}");
    const auto a = CommitAnalyser::load(asset_path("models/category.json"), asset_path("models/significance.json"),
                                        &side);
    const auto& s = sample();
    CHECK_THROWS_AS(a.analyse(s.commits[0], s.release, s.project), MissingPrecomputedEmbedding);
    Diagnostics diag;
    const auto out = a.analyse_all({s.commits[0]}, s.release, s.project, 2, &diag);
    CHECK(out[0].fallback);
    CHECK(out[0].category == kFallbackCategory);
    CHECK(out[0].significance == kFallbackSignificance);
    CHECK(diag.warnings().size() == 1);
  }

  TEST_CASE("swapped model files are rejected") {
    CHECK_THROWS_AS(CommitAnalyser::load(asset_path("models/significance.json"), asset_path("models/category.json")),
                    TaskMismatch);
  }
}
