#include "doctest.h"
#include "smartnote/conventional_commit.hpp"
#include "smartnote/summariser.hpp"

using namespace smartnote;

TEST_SUITE("conventional") {
  TEST_CASE("headers with scope and breaking marker") {
    const auto h = parse_conventional("feat(api)!: require flags\n\nbody");
    REQUIRE(h);
    CHECK(h->type == "feat");
    CHECK(h->scope == "api");
    CHECK(h->breaking);
    CHECK(h->description == "require flags");

    const auto f = parse_conventional("Fix: handle empty input");
    REQUIRE(f);
    CHECK(f->type == "fix");
    CHECK_FALSE(f->breaking);
  }

  TEST_CASE("breaking change footer") {
    const auto h = parse_conventional("refactor: drop v1 api\n\nBREAKING CHANGE: v1 endpoints are gone");
    REQUIRE(h);
    CHECK(h->breaking);
    CHECK(is_breaking_change("refactor: drop v1 api\n\nBREAKING-CHANGE: gone"));
    CHECK_FALSE(is_breaking_change("fix: mention breaking change handling in docs"));
  }

  TEST_CASE("non-conventional titles") {
    CHECK_FALSE(parse_conventional("fix crash on resize"));
    CHECK_FALSE(parse_conventional("Merge pull request #45 from user/branch"));
    CHECK_FALSE(parse_conventional(""));
  }

  TEST_CASE("prefix stripping capitalises") {
    CHECK(strip_conventional_prefix("feat(parser): add sections") == "Add sections");
    CHECK(strip_conventional_prefix("plain title") == "Plain title");
  }

  TEST_CASE("dependency updates") {
    CHECK(is_dependency_update("build(deps): bump fmt from 10.1 to 10.2"));
    CHECK(is_dependency_update("Bump serde from 1.0.1 to 1.0.2"));
    CHECK(is_dependency_update("chore: update dependency react to v18"));
    CHECK_FALSE(is_dependency_update("feat: add dependency graph view"));
  }
}
