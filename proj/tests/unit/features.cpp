#include <cmath>

#include "doctest.h"
#include "smartnote/embedding.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/features.hpp"
#include "smartnote/tree_model.hpp"
#include "test_support.hpp"

using namespace smartnote;
using namespace smartnote::testing;

namespace {

TreeModel model_with(std::vector<std::string> layout, std::size_t dim, bool log1p) {
  TreeModel m;
  m.task = ModelTask::Significance;
  m.feature_layout = std::move(layout);
  m.metadata = {"test", std::string(kHashedEmbedderId), dim, log1p};
  TreeNode leaf;
  leaf.value = {0.0};
  m.trees.push_back({{leaf}});
  return m;
}

}  // namespace

TEST_SUITE("features") {
  TEST_CASE("feature names") {
    CHECK(classify_feature_name("emb_12")->index == 12);
    CHECK_FALSE(classify_feature_name("emb_012"));
    CHECK_FALSE(classify_feature_name("emb_x"));
    CHECK(classify_feature_name("lang_Rust")->language == "Rust");
    CHECK(classify_feature_name("release_type_Major")->release_type == ReleaseType::Major);
    CHECK_FALSE(classify_feature_name("release_type_Huge"));
    CHECK(classify_feature_name("domain_SystemSoftware")->domain == ProjectDomain::SystemSoftware);
    CHECK(classify_feature_name("star_count")->kind == FeatureKind::StarCount);
    CHECK_FALSE(classify_feature_name("stars"));
    CHECK(is_count_feature(FeatureKind::AddedLines));
    CHECK_FALSE(is_count_feature(FeatureKind::AvgChangeset));
  }

  TEST_CASE("default layout validates") {
    const auto layout = default_feature_layout(4, {"C++", "Python"});
    CHECK(layout.front() == "emb_0");
    CHECK(std::find(layout.begin(), layout.end(), "lang_Other") != layout.end());
    model_with(layout, 4, true).validate();
  }

  TEST_CASE("assembly follows the layout") {
    auto c = make_commit("x", "feat: add widget", {"src/a.rs", "tool.py"}, 9);
    c.languages = {"Rust", "Python"};
    ReleaseContext rc;
    rc.release_type = ReleaseType::Minor;
    rc.commit_count = 7;
    rc.avg_changeset = 2.5;
    ProjectContext pc;
    pc.star_count = 99;
    pc.domain = ProjectDomain::SystemSoftware;
    const auto m = model_with({"release_type_Minor", "release_type_Major", "emb_1", "emb_0", "added_lines",
                               "release_commits", "avg_changeset", "star_count", "lang_Python", "lang_C",
                               "lang_Other", "domain_SystemSoftware", "domain_SoftwareTools"},
                              2, true);
    const std::vector<double> emb = {0.25, 0.75};
    const auto x = assemble_features(c, emb, rc, pc, m);
    REQUIRE(x.size() == 13);
    CHECK(x[0] == 1.0);
    CHECK(x[1] == 0.0);
    CHECK(x[2] == 0.75);
    CHECK(x[3] == 0.25);
    CHECK(x[4] == doctest::Approx(std::log1p(18.0)));
    CHECK(x[5] == doctest::Approx(std::log1p(7.0)));
    CHECK(x[6] == 2.5);
    CHECK(x[7] == doctest::Approx(std::log1p(99.0)));
    CHECK(x[8] == 1.0);
    CHECK(x[9] == 0.0);
    CHECK(x[10] == 1.0);  // Rust is not named
    CHECK(x[11] == 1.0);
    CHECK(x[12] == 0.0);
  }

  TEST_CASE("raw counts without the transform") {
    const auto c = make_commit("y", "fix: x", {"a.c"}, 4);
    const auto m = model_with({"emb_0", "added_lines", "domain_SoftwareTools"}, 1, false);
    const auto x = assemble_features(c, std::vector<double>{0.0}, {}, {}, m);
    CHECK(x[1] == 4.0);
    CHECK(x[2] == 1.0);  // unset domain
  }

  TEST_CASE("short embedding is a layout mismatch") {
    const auto m = model_with({"emb_0", "emb_1"}, 2, false);
    CHECK_THROWS_AS(assemble_features(make_commit("z", "x"), std::vector<double>{0.0}, {}, {}, m), LayoutMismatch);
  }

  TEST_CASE("commit embedding source") {
    const auto c = make_commit("w", "docs: explain flags");
    const auto m = model_with({"emb_0", "emb_1", "emb_2"}, 3, false);
    CHECK(embed_commit(c, m, nullptr) == hashed_embedding(c.message, 3));
    const auto side = EmbeddingSidecar::parse("{\"sha\": \"" + c.sha + "\", \"embedding\": [3, 2, 1]}");
    CHECK(embed_commit(c, m, &side) == std::vector<double>{3, 2, 1});
  }
}
