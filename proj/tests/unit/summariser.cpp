#include "doctest.h"
#include "smartnote/assets.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/summariser.hpp"
#include "smartnote/text.hpp"
#include "test_support.hpp"

using namespace smartnote;
using namespace smartnote::testing;

namespace {

const TemplateLibrary& templates() {
  static const auto lib = TemplateLibrary::load_dir(asset_dir() / "prompts");
  return lib;
}

CommitAnalysis analysis(const Commit& c, const std::string& category, double sig) {
  return {c.sha, category, 0.9, sig, false};
}

class FailingProvider final : public LlmProvider {
 public:
  std::string complete(const Prompt&, const CompletionParams&) override { throw ProviderError(503, "down"); }
  std::string name() const override { return "failing"; }
};

}  // namespace

TEST_SUITE("summariser") {
  TEST_CASE("ungrouped gives one changeset per commit") {
    const std::vector<Commit> commits = {make_commit("a", "feat: a (#1)", {"a"}, 3, 1),
                                         make_commit("b", "fix: b", {"b"})};
    const auto cs = pack_changesets({analysis(commits[0], "feat", 0.4), analysis(commits[1], "fix", 0.3)}, commits,
                                    false);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].members.size() == 1);
    CHECK(cs[0].pr_number == 1);
    CHECK(cs[1].title == "fix: b");
    CHECK(cs[1].order == 1);
  }

  TEST_CASE("grouping by pull request") {
    std::vector<Commit> commits = {make_commit("a", "feat: parser (#7)", {"src/p.c"}, 3, 7),
                                   make_commit("b", "fix: other", {"src/o.c"}),
                                   make_commit("c", "fix: parser edge (#7)", {"src/p.c"}, 3, 7),
                                   make_commit("d", "fix: parser more (#7)", {"src/q.c"}, 3, 7)};
    const std::vector<CommitAnalysis> an = {analysis(commits[0], "feat", 0.2), analysis(commits[1], "fix", 0.1),
                                            analysis(commits[2], "fix", 0.7), analysis(commits[3], "fix", 0.3)};
    const auto cs = pack_changesets(an, commits, true);
    REQUIRE(cs.size() == 2);
    const auto& g = cs[0];
    CHECK(g.pr_number == 7);
    CHECK(g.significance == doctest::Approx(0.7));
    CHECK(g.change_type == "fix");
    REQUIRE(g.members.size() == 3);
    CHECK(g.members[0].sha == commits[0].sha);
    CHECK(g.members[2].sha == commits[3].sha);
    CHECK(g.patches.find("src/p.c") < g.patches.find("src/q.c"));
    CHECK(cs[1].members[0].sha == commits[1].sha);

    // Every input sha lands in exactly one changeset.
    std::set<std::string> seen;
    for (const auto& c : cs)
      for (const auto& m : c.members) CHECK(seen.insert(m.sha).second);
    CHECK(seen.size() == commits.size());
  }

  TEST_CASE("modal category ties go to the most significant member") {
    std::vector<Commit> commits = {make_commit("a", "x (#3)", {}, 1, 3), make_commit("b", "y (#3)", {}, 1, 3)};
    const auto cs = pack_changesets({analysis(commits[0], "docs", 0.1), analysis(commits[1], "perf", 0.5)}, commits,
                                    true);
    CHECK(cs[0].change_type == "perf");
  }

  TEST_CASE("misaligned analyses are rejected") {
    const std::vector<Commit> commits = {make_commit("a", "x")};
    CHECK_THROWS(pack_changesets({analysis(make_commit("z", "y"), "fix", 0.1)}, commits, false));
  }

  TEST_CASE("expository uses the title without the model") {
    const auto c = make_commit("a", "Fix crash when the cache is empty\n\nLong body.", {"a.c"});
    const auto cs = pack_changesets({analysis(c, "fix", 0.5)}, {c}, false);
    MockProvider p;
    const SummariserContext ctx{&p, &templates(), {}, nullptr};
    const auto e = summarise_changeset(cs[0], WritingStyle::Expository, ctx);
    CHECK(e.summary == "Fix crash when the cache is empty");
    CHECK(p.call_count() == 0);
    CHECK(e.member_shas() == std::vector<std::string>{c.sha});
  }

  TEST_CASE("other styles ask the model") {
    const auto c = make_commit("a", "feat: add a lookup cache", {"a.c"});
    const auto cs = pack_changesets({analysis(c, "feat", 0.5)}, {c}, false);
    MockProvider p;
    const SummariserContext ctx{&p, &templates(), {}, nullptr};
    const auto e = summarise_changeset(cs[0], WritingStyle::Descriptive, ctx);
    CHECK(e.summary == "Add a lookup cache.");
    CHECK(p.call_count("summarise_changeset") == 1);
    CHECK(e.category == "feat");
  }

  TEST_CASE("provider errors carry the changeset sha") {
    const auto c = make_commit("a", "feat: x", {"a.c"});
    const auto cs = pack_changesets({analysis(c, "feat", 0.5)}, {c}, false);
    FailingProvider p;
    const SummariserContext ctx{&p, &templates(), {}, nullptr};
    try {
      summarise_changeset(cs[0], WritingStyle::Persuasive, ctx);
      FAIL("expected ProviderError");
    } catch (const ProviderError& e) {
      CHECK(e.status() == 503);
      CHECK(e.context().find(c.sha) != std::string::npos);
    }
  }

  TEST_CASE("summarise_all keeps changeset order") {
    std::vector<Commit> commits;
    std::vector<CommitAnalysis> an;
    for (int i = 0; i < 12; ++i) {
      commits.push_back(make_commit("c" + std::to_string(i), "feat: item " + std::to_string(i), {"f"}));
      an.push_back(analysis(commits.back(), "feat", 0.3));
    }
    const auto cs = pack_changesets(an, commits, false);
    MockProvider p;
    const auto out = summarise_all(cs, WritingStyle::Descriptive, {&p, &templates(), {}, nullptr}, 5);
    REQUIRE(out.size() == 12);
    for (int i = 0; i < 12; ++i) CHECK(out[i].summary == "Item " + std::to_string(i) + ".");
  }

  TEST_CASE("word cap") {
    std::string long_text;
    for (int i = 0; i < 70; ++i) long_text += "word ";
    const auto capped = cap_words(long_text, 60);
    CHECK(text::word_count(capped) == 60);
    CHECK(capped.back() == '.');
    CHECK(cap_words("One. Two three four.", 3) == "One.");
    CHECK(cap_words("short text", 60) == "short text");
  }
}
