#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smartnote/analyser.hpp"
#include "smartnote/composer.hpp"
#include "smartnote/config.hpp"
#include "smartnote/hosting.hpp"
#include "smartnote/provider.hpp"
#include "smartnote/settings.hpp"

namespace smartnote {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

enum class ProviderKind { Live, Mock };
std::optional<ProviderKind> parse_provider_kind(std::string_view s);

/// Everything `generate` and `analyze` need. Optional fields left empty fall
/// back to the config file, then to inference or defaults.
struct GenerateOptions {
  std::filesystem::path repo = ".";
  std::string from_tag;
  std::string to_tag;

  std::optional<Setting<ProjectDomain>> domain;
  std::optional<Setting<WritingStyle>> style;
  std::optional<Setting<Structure>> structure;
  std::optional<Setting<double>> mst;
  std::optional<Setting<bool>> group;

  std::optional<ProviderKind> provider;
  std::optional<std::string> model_id;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> parallelism;
  std::optional<std::size_t> diff_budget;
  std::optional<std::filesystem::path> category_model;
  std::optional<std::filesystem::path> significance_model;
  std::optional<std::filesystem::path> embeddings;
  std::optional<std::filesystem::path> mock_script;
  std::optional<std::string> llm_base_url;
  std::optional<std::string> github_api_url;
  std::optional<bool> offline;  // skip the forge API (always on for mock)
  std::optional<bool> llm_reorder;
  std::optional<std::string> title;
  std::optional<std::string> description;
  std::optional<std::filesystem::path> output;

  // Ablations.
  bool raw_llm = false;
  bool no_composer = false;
  bool random_context = false;
};

/// Fills every field not already set from the config file, with provenance
/// Config. Throws ParseError for values that do not parse.
void apply_config(GenerateOptions& options, const ConfigFile& config);

/// Provider for the options: MockProvider (optionally scripted) or
/// HttpProvider.
std::unique_ptr<LlmProvider> make_provider(const GenerateOptions& options);

struct GenerateResult {
  std::string markdown;
  ReleaseNote note;
  Settings settings;
  std::vector<Commit> commits;
  std::vector<CommitAnalysis> analyses;
  std::vector<std::string> warnings;
  std::size_t entries_before_composer = 0;
  std::size_t llm_calls = 0;
};

/// Runs miner, settings, analyser, summariser and composer. `hosting` may
/// be null, in which case remote project data is skipped. Throws EmptyRange,
/// TagNotFound, NotARepository, ProviderError, Timeout, ParseError and
/// InvariantViolation (bad model files).
GenerateResult generate(const GenerateOptions& options, LlmProvider& provider, HostingClient* hosting);

struct AnalyzeResult {
  std::vector<Commit> commits;
  std::vector<CommitAnalysis> analyses;
  ReleaseContext release;
  ProjectContext project;
};

/// Miner plus analyser only. The project domain comes from the options or
/// the keyword heuristic; no LLM calls are made.
AnalyzeResult analyze(const GenerateOptions& options);

/// Seeded uniform choice used by --random-context.
ProjectDomain random_domain(std::uint64_t seed);

}  // namespace smartnote
