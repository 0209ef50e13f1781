#include "smartnote/hosting.hpp"

#include <cstdlib>
#include <regex>

#include "httplib.h"
#include "json.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/text.hpp"

namespace smartnote {
namespace {

using json = nlohmann::json;

std::optional<std::chrono::seconds> retry_after_of(const httplib::Response& res) {
  if (res.has_header("Retry-After")) {
    try {
      return std::chrono::seconds(std::stoll(res.get_header_value("Retry-After")));
    } catch (const std::exception&) {
    }
  }
  if (res.has_header("X-RateLimit-Reset")) {
    try {
      const auto reset = std::stoll(res.get_header_value("X-RateLimit-Reset"));
      const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
      return std::chrono::seconds(reset > now ? reset - now : 0);
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

// Last page number from a GitHub pagination Link header.
std::optional<std::uint64_t> last_page(const std::string& link) {
  static const std::regex re(R"(<[^>]*[?&]page=([0-9]+)[^>]*>;\s*rel="last")");
  std::smatch m;
  if (!std::regex_search(link, m, re)) return std::nullopt;
  return std::stoull(m[1].str());
}

class Session {
 public:
  Session(const GitHubClient::Options& opts, const std::string& token)
      : client_(opts.base_url) {
    client_.set_connection_timeout(opts.timeout);
    client_.set_read_timeout(opts.timeout);
    client_.set_follow_location(true);
    headers_ = {{"User-Agent", "smartnote"}, {"X-GitHub-Api-Version", "2022-11-28"}};
    if (!token.empty()) headers_.emplace("Authorization", "Bearer " + token);
  }

  httplib::Result get(const std::string& path, const char* accept = "application/vnd.github+json") {
    auto headers = headers_;
    headers.emplace("Accept", accept);
    auto res = client_.Get(path, headers);
    if (!res) throw Error("GitHub request failed: " + httplib::to_string(res.error()));
    check(*res);
    return res;
  }

 private:
  static void check(const httplib::Response& res) {
    if (res.status >= 200 && res.status < 300) return;
    if (res.status == 429 ||
        (res.status == 403 && res.has_header("X-RateLimit-Remaining") &&
         res.get_header_value("X-RateLimit-Remaining") == "0")) {
      throw RateLimited("GitHub API rate limit exceeded", retry_after_of(res));
    }
    if (res.status == 401 || res.status == 403)
      throw AuthFailure("GitHub API rejected the credentials (status " + std::to_string(res.status) + ")");
    throw Error("GitHub API returned status " + std::to_string(res.status));
  }

  httplib::Client client_;
  httplib::Headers headers_;
};

std::uint64_t count_pages(Session& s, const std::string& path) {
  auto res = s.get(path);
  if (auto n = last_page(res->get_header_value("Link"))) return *n;
  const auto body = json::parse(res->body, nullptr, false);
  return body.is_array() ? body.size() : 0;
}

std::uint64_t search_total(Session& s, const RepoSlug& slug, const char* type) {
  auto res = s.get("/search/issues?per_page=1&q=repo:" + slug.owner + "/" + slug.name + "+type:" + type);
  const auto body = json::parse(res->body, nullptr, false);
  if (!body.is_object()) return 0;
  return body.value("total_count", std::uint64_t{0});
}

}  // namespace

std::optional<RepoSlug> parse_github_url(std::string_view url) {
  static const std::regex re(
      R"(^(?:(?:https?|ssh|git)://(?:[^@/]+@)?github\.com/|git@github\.com:)([A-Za-z0-9_.-]+)/([A-Za-z0-9_.-]+?)(?:\.git)?/?$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(url.begin(), url.end(), m, re)) return std::nullopt;
  return RepoSlug{m[1].str(), m[2].str()};
}

GitHubClient::GitHubClient() : GitHubClient(Options{}) {}

GitHubClient::GitHubClient(Options options) : options_(std::move(options)) {
  if (options_.token) {
    token_ = *options_.token;
  } else if (const char* env = std::getenv("SMARTNOTE_GITHUB_TOKEN")) {
    token_ = env;
  }
}

RemoteProjectInfo GitHubClient::fetch_project(const RepoSlug& slug) {
  Session s(options_, token_);
  const std::string base = "/repos/" + slug.owner + "/" + slug.name;
  RemoteProjectInfo info;

  auto repo = s.get(base);
  const auto body = json::parse(repo->body, nullptr, false);
  if (!body.is_object()) throw Error("GitHub API returned malformed repository JSON");
  info.name = body.value("name", slug.name);
  if (body.contains("description") && body["description"].is_string())
    info.description = body["description"].get<std::string>();
  info.star_count = body.value("stargazers_count", std::uint64_t{0});

  try {
    info.readme = s.get(base + "/readme", "application/vnd.github.raw")->body;
  } catch (const AuthFailure&) {
    throw;
  } catch (const RateLimited&) {
    throw;
  } catch (const Error&) {
    // No README is fine.
  }
  info.contributor_count = count_pages(s, base + "/contributors?per_page=1&anon=true");
  info.comment_count = count_pages(s, base + "/issues/comments?per_page=1");
  info.issue_count = search_total(s, slug, "issue");
  info.pr_count = search_total(s, slug, "pr");
  return info;
}

ProjectContext fetch_remote_context(const std::string& remote_url, HostingClient& client) {
  ProjectContext ctx;
  ctx.remote_url = remote_url;
  const auto slug = parse_github_url(remote_url);
  if (!slug) {
    ctx.degraded = true;
    return ctx;
  }
  try {
    const auto info = client.fetch_project(*slug);
    ctx.name = info.name;
    ctx.description = info.description;
    ctx.readme = info.readme;
    ctx.contributor_count = info.contributor_count;
    ctx.star_count = info.star_count;
    ctx.issue_count = info.issue_count;
    ctx.pr_count = info.pr_count;
    ctx.comment_count = info.comment_count;
  } catch (const AuthFailure&) {
    throw;
  } catch (const RateLimited&) {
    throw;
  } catch (const Error&) {
    ctx = ProjectContext{};
    ctx.remote_url = remote_url;
    ctx.degraded = true;
  }
  return ctx;
}

ProjectContext merge_project_context(ProjectContext local, const ProjectContext& remote) {
  local.degraded = remote.degraded;
  if (remote.degraded) return local;
  if (!remote.name.empty()) local.name = remote.name;
  if (!remote.description.empty()) local.description = remote.description;
  if (!remote.readme.empty()) local.readme = remote.readme;
  if (remote.contributor_count) local.contributor_count = remote.contributor_count;
  local.star_count = remote.star_count;
  local.issue_count = remote.issue_count;
  local.pr_count = remote.pr_count;
  local.comment_count = remote.comment_count;
  return local;
}

}  // namespace smartnote
