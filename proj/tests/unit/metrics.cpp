#include <cmath>

#include "doctest.h"
#include "smartnote/errors.hpp"
#include "smartnote/metrics.hpp"
#include "test_support.hpp"

using namespace smartnote;
using namespace smartnote::testing;

namespace {

double entropy_oracle(std::vector<double> counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  double h = 0.0;
  for (double c : counts)
    if (c > 0) h -= (c / total) * std::log2(c / total);
  return h;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("commit list parsing") {
    const auto refs = parse_commit_list("# header\n\n" + fake_sha("a") + "\n" + fake_sha("b") + ",17\n");
    REQUIRE(refs.size() == 2);
    CHECK_FALSE(refs[0].pr);
    CHECK(refs[1].pr == 17);
    CHECK_THROWS_AS(parse_commit_list("nothex\n"), ParseError);
    CHECK_THROWS_AS(parse_commit_list(fake_sha("a") + ",x\n"), ParseError);
  }

  TEST_CASE("coverage counts sha prefixes and pull requests") {
    const std::string a = "abcdef1" + std::string(33, '0');
    const std::string b = "1234567" + std::string(33, '1');
    const std::vector<CommitRef> commits = {{a, std::nullopt}, {fake_sha("pr"), 12}, {fake_sha("pr2"), 123},
                                            {b, std::nullopt}};
    const std::string note = "## Fixes\n- Fixed A (#12)\n- Fixed B (abcdef1)\n- Fixed C (#1230)\n- Fixed D (123456)\n";
    CHECK(commit_coverage(note, commits) == doctest::Approx(2.0 / 4.0));
    CHECK(commit_coverage("", commits) == 0.0);
    CHECK_THROWS_AS(commit_coverage(note, {}), NoCommits);
    // A hex run that does not prefix the sha does not count.
    CHECK(commit_coverage("see bcdef12", {{a, std::nullopt}}) == 0.0);
    CHECK(commit_coverage("see " + a, {{a, std::nullopt}}) == 1.0);
  }

  TEST_CASE("entropy against the oracle") {
    CHECK(entropy_of_counts({2, 2}) == doctest::Approx(1.0));
    CHECK(entropy_of_counts({1, 1, 2}) == doctest::Approx(1.5));
    CHECK(entropy_of_counts({5}) == 0.0);
    CHECK(entropy_of_counts({}) == 0.0);
    CHECK(entropy_of_counts({3, 0, 1}) == doctest::Approx(entropy_oracle({3, 1})));
    const std::string note =
        "# Title\n## Features\n- a\n- b\n- c\n  - nested\n### Parser\n- d\n## Fixes\n- e\n```\n- not an item\n```\n";
    CHECK(information_entropy(note) == doctest::Approx(entropy_oracle({3, 1, 1})));
    CHECK(information_entropy("- flat\n- list\n") == 0.0);
  }

  TEST_CASE("sentences") {
    CHECK(split_sentences("Fixed a bug. Added a flag! Why? Done").size() == 4);
    CHECK(split_sentences("Use e.g. Foo here. Then stop.").size() == 2);
    CHECK(split_sentences("Version 1.2 is out. Next").size() == 2);
    CHECK(split_sentences("line one\nline two").size() == 2);
    CHECK(split_sentences("lower. case start").size() == 1);
  }

  TEST_CASE("ARI and Dale-Chall against hand computation") {
    const auto r = readability("The cat sat. The dog ran.");
    CHECK(r.words == 6);
    CHECK(r.sentences == 2);
    CHECK(r.characters == 18);
    CHECK(r.difficult_words == 0);
    CHECK(r.ari == doctest::Approx(4.71 * 3.0 + 0.5 * 3.0 - 21.43));
    CHECK(r.dale_chall == doctest::Approx(0.0496 * 3.0));

    const auto z = readability("## Notes\n- The zebra sat.\n- The dog ran.");
    CHECK(z.words == 7);  // the heading is a sentence too
    CHECK(z.sentences == 3);
    CHECK(z.difficult_words == 1);
    const double pct = 100.0 / 7.0;
    CHECK(z.dale_chall == doctest::Approx(0.1579 * pct + 0.0496 * 7.0 / 3.0 + 3.6365));
    CHECK_THROWS_AS(readability("<!-- only a comment -->"), EmptyText);
  }

  TEST_CASE("familiar words") {
    CHECK(is_familiar_word("dogs"));
    CHECK(is_familiar_word("Running"));
    CHECK(is_familiar_word("v2"));
    CHECK_FALSE(is_familiar_word("zebra"));
    CHECK_FALSE(is_familiar_word("serialization"));
  }

  TEST_CASE("entities") {
    CHECK(is_entity_token("Linux"));
    CHECK(is_entity_token("HttpClient"));
    CHECK(is_entity_token("parse_args()"));
    CHECK(is_entity_token("std::vector"));
    CHECK(is_entity_token("os.path"));
    CHECK_FALSE(is_entity_token("Fixed"));
    CHECK_FALSE(is_entity_token("crash,"));
    // 9 tokens, 4 of them entities (both code tokens count).
    CHECK(entity_percentage("Fixed crash on Linux in `parse args` and HttpClient.") == doctest::Approx(4.0 / 9.0));
    CHECK(entity_percentage("Fixed crash on Linux and HttpClient.") == doctest::Approx(2.0 / 6.0));
    CHECK(entity_percentage("") == 0.0);
  }

  TEST_CASE("success and report") {
    CHECK(success("## A\n- entry\n"));
    CHECK_FALSE(success("## A\n- \n"));
    CHECK_FALSE(success("Just prose."));
    const std::vector<CommitRef> commits = {{fake_sha("x"), 3}};
    const auto r = evaluate_note("# R\n## Fixes\n- Fixed it (#3)\n<!-- smartnote: {} -->\n", &commits);
    CHECK(r.commit_coverage == 1.0);
    CHECK(r.success);
    CHECK(r.token_count > 0);
    CHECK(r.token_count == note_token_count("# R\n## Fixes\n- Fixed it (#3)\n"));
    CHECK(to_json(r).find("\"commit_coverage\": 1.0") != std::string::npos);
    CHECK(format_table({{"a", r}}).find("100.0%") != std::string::npos);
    const auto empty = evaluate_note("", nullptr);
    CHECK_FALSE(empty.commit_coverage);
    CHECK_FALSE(empty.ari);
  }
}
