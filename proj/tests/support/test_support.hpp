#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smartnote/analyser.hpp"
#include "smartnote/process.hpp"
#include "smartnote/repo_miner.hpp"
#include "smartnote/summariser.hpp"

namespace smartnote::testing {

/// A repository built by fixtures/make_fixture_repos.sh.
std::filesystem::path fixture_repo(const std::string& name);
std::filesystem::path source_path(const std::string& relative);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& content);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

/// Deterministic 40-hex sha derived from a seed string.
std::string fake_sha(const std::string& seed);

/// A commit with one patch per path, each adding `lines` lines.
Commit make_commit(const std::string& seed, const std::string& message, std::vector<std::string> paths = {},
                   std::uint64_t lines = 3, std::optional<int> pr = std::nullopt);

ReleaseNoteEntry make_entry(const std::string& seed, const std::string& summary, double significance,
                            const std::string& category = "feat", std::optional<int> pr = std::nullopt);

/// Runs the smartnote binary. With `nonet_log`, the run is wrapped in the
/// socket-refusing preload shim logging to that file.
ProcessResult run_cli(const std::vector<std::string>& args,
                      const std::optional<std::filesystem::path>& nonet_log = std::nullopt);

}  // namespace smartnote::testing
