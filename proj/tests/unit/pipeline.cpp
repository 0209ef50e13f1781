#include <cstdlib>

#include "doctest.h"
#include "mock_server.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/markdown.hpp"
#include "smartnote/metrics.hpp"
#include "smartnote/pipeline.hpp"
#include "test_support.hpp"

using namespace smartnote;
using namespace smartnote::testing;

namespace {

GenerateOptions sample_options() {
  GenerateOptions o;
  o.repo = fixture_repo("sample");
  o.from_tag = "v1.0.0";
  o.to_tag = "v1.1.0";
  o.provider = ProviderKind::Mock;
  return o;
}

GenerateResult run(const GenerateOptions& o) {
  MockProvider p;
  return generate(o, p, nullptr);
}

std::size_t markdown_bullets(const std::string& md) { return markdown::parse_outline(md).bullets; }

std::vector<CommitRef> refs(const std::vector<Commit>& commits) {
  std::vector<CommitRef> out;
  for (const auto& c : commits) out.push_back({c.sha, c.pr_number});
  return out;
}

const SettingRecord& setting(const GenerateResult& r, const std::string& key) {
  for (const auto& s : r.note.metadata.settings)
    if (s.key == key) return s;
  throw std::runtime_error("no setting " + key);
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("sample release matches the golden note") {
    const auto r = run(sample_options());
    const auto golden = source_path("golden/sample_v1.1.0.md");
    if (std::getenv("SMARTNOTE_UPDATE_GOLDEN")) write_text(golden, r.markdown);
    CHECK(r.markdown == read_text(golden));
  }

  TEST_CASE("output is deterministic") {
    auto o = sample_options();
    const auto a = run(o);
    o.parallelism = 1;
    const auto b = run(o);
    o.parallelism = 16;
    const auto c = run(o);
    CHECK(a.markdown == b.markdown);
    CHECK(a.markdown == c.markdown);
  }

  TEST_CASE("every commit is cited without a threshold") {
    for (const auto& [repo, from, to] : std::vector<std::tuple<std::string, std::string, std::string>>{
             {"sample", "v1.0.0", "v1.1.0"}, {"translations", "v1.2.0", "v1.3.0"}, {"linear", "v1.0.0", "v2.1.0"}}) {
      GenerateOptions o;
      o.repo = fixture_repo(repo);
      o.from_tag = from;
      o.to_tag = to;
      o.provider = ProviderKind::Mock;
      o.mst = Setting<double>{0.0, Provenance::Cli};
      const auto r = run(o);
      CHECK_MESSAGE(commit_coverage(r.markdown, refs(r.commits)) == 1.0, repo);
    }
  }

  TEST_CASE("translations collapse per language") {
    GenerateOptions o;
    o.repo = fixture_repo("translations");
    o.from_tag = "v1.2.0";
    o.to_tag = "v1.3.0";
    o.provider = ProviderKind::Mock;
    o.mst = Setting<double>{0.0, Provenance::Cli};
    const auto r = run(o);
    CHECK(r.entries_before_composer == 10);
  }

  TEST_CASE("a trivial release keeps one entry") {
    GenerateOptions o;
    o.repo = fixture_repo("trivial");
    o.from_tag = "v1.14.61";
    o.to_tag = "v1.14.62";
    o.provider = ProviderKind::Mock;
    CHECK(markdown_bullets(run(o).markdown) == 1);
    o.mst = Setting<double>{0.99, Provenance::Cli};
    const auto r = run(o);
    CHECK(markdown_bullets(r.markdown) == 1);
    CHECK(r.warnings.size() >= 1);
  }

  TEST_CASE("settings carry provenance") {
    auto o = sample_options();
    o.structure = Setting<Structure>{Structure::ChangePriority, Provenance::Cli};
    apply_config(o, ConfigFile::parse("structure = affected-module\nmst = 0.3\n"));
    const auto r = run(o);
    CHECK(setting(r, "structure").value == "ChangePriority");
    CHECK(setting(r, "structure").source == "cli");
    CHECK(setting(r, "mst").value == "0.30");
    CHECK(setting(r, "mst").source == "config");
    CHECK(setting(r, "domain").source == "inferred");
    CHECK(setting(r, "group_commits").source == "default");
  }

  TEST_CASE("bad config values") {
    GenerateOptions o;
    CHECK_THROWS_AS(apply_config(o, ConfigFile::parse("mst = 3\n")), ParseError);
    CHECK_THROWS_AS(apply_config(o, ConfigFile::parse("style = shouty\n")), ParseError);
    CHECK_THROWS_AS(apply_config(o, ConfigFile::parse("seed = -1\n")), ParseError);
  }

  TEST_CASE("expository with poor messages switches style") {
    auto o = sample_options();
    o.style = Setting<WritingStyle>{WritingStyle::Expository, Provenance::Cli};
    MockProvider p(MockScript::parse(R"({"commit_quality": "poor"})"));
    const auto r = generate(o, p, nullptr);
    CHECK(r.settings.writing_style.value == WritingStyle::Persuasive);
    CHECK(r.note.metadata.extra.at("message_quality") == "poor (0/12)");
  }

  TEST_CASE("ablations") {
    auto o = sample_options();
    o.raw_llm = true;
    const auto raw = run(o);
    CHECK(raw.note.metadata.extra.at("mode") == "raw-llm");
    CHECK(raw.markdown.find("- feat(parser)") != std::string::npos);

    o = sample_options();
    o.no_composer = true;
    const auto flat = run(o);
    CHECK(flat.markdown.find("## ") == std::string::npos);
    CHECK(markdown_bullets(flat.markdown) == flat.entries_before_composer);

    o = sample_options();
    o.random_context = true;
    o.seed = 3;
    const auto rnd = run(o);
    CHECK(rnd.settings.domain.value == random_domain(3));
    CHECK(rnd.note.metadata.extra.at("domain_method") == "random");
    CHECK(rnd.note.metadata.extra.at("release_type") == "Unknown");
  }

  TEST_CASE("range errors surface") {
    auto o = sample_options();
    o.to_tag = "v1.0.0";
    CHECK_THROWS_AS(run(o), EmptyRange);
    o.to_tag = "v7";
    CHECK_THROWS_AS(run(o), TagNotFound);
  }

  TEST_CASE("a live provider over HTTP") {
    MockServer server([](const MockRequest& req) {
      const bool domain = req.body.find("Classify the software project") != std::string::npos;
      const std::string content = domain ? "Libraries & Frameworks" : "Changed things.";
      return MockResponse{200, R"({"choices": [{"message": {"role": "assistant", "content": ")" + content + R"("}}]})"};
    });
    auto o = sample_options();
    o.provider = ProviderKind::Live;
    o.llm_base_url = server.base_url() + "/v1";
    const auto p = make_provider(o);
    CHECK(p->name() != "mock");
    const auto r = generate(o, *p, nullptr);
    CHECK(server.request_count() >= 6);
    CHECK(r.markdown.find("Changed things.") != std::string::npos);
  }

  TEST_CASE("analysis without generation") {
    const auto r = analyze(sample_options());
    CHECK(r.analyses.size() == 12);
    CHECK(r.release.release_type == ReleaseType::Minor);
  }
}
