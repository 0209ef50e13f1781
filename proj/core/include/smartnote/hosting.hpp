#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "smartnote/repo_miner.hpp"

namespace smartnote {

struct RepoSlug {
  std::string owner;
  std::string name;
};

/// Accepts https, ssh and scp-style GitHub URLs; nullopt for anything else.
std::optional<RepoSlug> parse_github_url(std::string_view url);

/// Remote project facts as reported by a hosting forge.
struct RemoteProjectInfo {
  std::string name;
  std::string description;
  std::string readme;
  std::uint64_t contributor_count = 0;
  std::uint64_t star_count = 0;
  std::uint64_t issue_count = 0;
  std::uint64_t pr_count = 0;
  std::uint64_t comment_count = 0;
};

/// A forge API. Implementations throw AuthFailure / RateLimited for those
/// conditions and smartnote::Error for transport failures.
class HostingClient {
 public:
  virtual ~HostingClient() = default;
  virtual RemoteProjectInfo fetch_project(const RepoSlug& slug) = 0;
};

/// GitHub REST v3 client. Token comes from SMARTNOTE_GITHUB_TOKEN unless
/// given explicitly.
class GitHubClient final : public HostingClient {
 public:
  struct Options {
    std::string base_url = "https://api.github.com";
    std::optional<std::string> token;  // nullopt: read SMARTNOTE_GITHUB_TOKEN
    std::chrono::seconds timeout{15};
  };

  GitHubClient();
  explicit GitHubClient(Options options);
  RemoteProjectInfo fetch_project(const RepoSlug& slug) override;

 private:
  Options options_;
  std::string token_;
};

/// Project context from the forge. Network failures and unsupported URLs
/// degrade to neutral defaults (all counts 0, degraded = true) so generation
/// never stops for lack of network; authentication and rate-limit problems
/// are reported.
ProjectContext fetch_remote_context(const std::string& remote_url, HostingClient& client);

/// Overlays remote facts on locally mined ones. Remote values win when
/// present; local commit and contributor counts fill degraded gaps.
ProjectContext merge_project_context(ProjectContext local, const ProjectContext& remote);

}  // namespace smartnote
