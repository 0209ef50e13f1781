#include "doctest.h"
#include "mock_server.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/hosting.hpp"

using namespace smartnote;
using namespace smartnote::testing;

namespace {

MockResponse github(const MockRequest& r) {
  if (r.path == "/repos/octo/widget")
    return {200, R"({"name": "widget", "description": "A widget library", "stargazers_count": 5000})"};
  if (r.path == "/repos/octo/widget/readme") return {200, "# widget\nA library.", "text/plain"};
  if (r.path == "/repos/octo/widget/contributors") return {200, R"([{"login": "a"}, {"login": "b"}])"};
  if (r.path == "/repos/octo/widget/issues/comments") return {200, "[]"};
  if (r.path == "/search/issues") return {200, R"({"total_count": 12})"};
  return {404, "{}"};
}

GitHubClient client_for(const MockServer& server, std::optional<std::string> token = std::string("t")) {
  GitHubClient::Options o;
  o.base_url = server.base_url();
  o.token = std::move(token);
  o.timeout = std::chrono::seconds(5);
  return GitHubClient(o);
}

}  // namespace

TEST_SUITE("hosting") {
  TEST_CASE("github url forms") {
    for (const char* url : {"https://github.com/octo/widget", "https://github.com/octo/widget.git",
                            "git@github.com:octo/widget.git", "ssh://git@github.com/octo/widget"}) {
      const auto s = parse_github_url(url);
      REQUIRE_MESSAGE(s, url);
      CHECK(s->owner == "octo");
      CHECK(s->name == "widget");
    }
    CHECK_FALSE(parse_github_url("https://gitlab.com/octo/widget"));
    CHECK_FALSE(parse_github_url("/local/path"));
  }

  TEST_CASE("counts pass through from the API") {
    MockServer server(github);
    auto client = client_for(server);
    const auto ctx = fetch_remote_context("https://github.com/octo/widget", client);
    CHECK_FALSE(ctx.degraded);
    CHECK(ctx.star_count == 5000);
    CHECK(ctx.description == "A widget library");
    CHECK(ctx.readme.find("A library.") != std::string::npos);
    CHECK(ctx.contributor_count == 2);
    CHECK(ctx.issue_count == 12);
    CHECK(ctx.pr_count == 12);
  }

  TEST_CASE("401 maps to AuthFailure") {
    MockServer server([](const MockRequest&) { return MockResponse{401, R"({"message": "Bad credentials"})"}; });
    auto client = client_for(server);
    CHECK_THROWS_AS(fetch_remote_context("https://github.com/octo/widget", client), AuthFailure);
  }

  TEST_CASE("rate limiting keeps retry-after") {
    MockServer server([](const MockRequest&) { return MockResponse{429, "{}", "application/json", "60"}; });
    auto client = client_for(server);
    try {
      fetch_remote_context("https://github.com/octo/widget", client);
      FAIL("expected RateLimited");
    } catch (const RateLimited& e) {
      REQUIRE(e.retry_after());
      CHECK(e.retry_after()->count() == 60);
    }
  }

  TEST_CASE("unreachable forge degrades to neutral counts") {
    GitHubClient::Options o;
    o.base_url = "http://127.0.0.1:9";
    o.timeout = std::chrono::seconds(2);
    GitHubClient client(o);
    const auto ctx = fetch_remote_context("https://github.com/octo/widget", client);
    CHECK(ctx.degraded);
    CHECK(ctx.star_count == 0);
    CHECK(ctx.issue_count == 0);
    CHECK(ctx.pr_count == 0);
    CHECK(ctx.comment_count == 0);
  }

  TEST_CASE("non-github remotes degrade without a request") {
    MockServer server(github);
    auto client = client_for(server);
    const auto ctx = fetch_remote_context("https://example.org/x/y", client);
    CHECK(ctx.degraded);
    CHECK(server.request_count() == 0);
  }

  TEST_CASE("merge keeps local counts when the remote is degraded") {
    ProjectContext local;
    local.name = "local";
    local.commit_total = 40;
    local.contributor_count = 3;
    ProjectContext remote;
    remote.degraded = true;
    const auto merged = merge_project_context(local, remote);
    CHECK(merged.degraded);
    CHECK(merged.contributor_count == 3);
    CHECK(merged.commit_total == 40);
  }
}
