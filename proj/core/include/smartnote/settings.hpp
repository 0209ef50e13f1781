#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smartnote/domain.hpp"
#include "smartnote/prompt.hpp"
#include "smartnote/provider.hpp"
#include "smartnote/repo_miner.hpp"

namespace smartnote {

/// Where a setting came from, highest precedence first. Cli and Config are
/// both user choices.
enum class Provenance { Cli, Config, Inferred, Default };

std::string_view to_string(Provenance p);
inline bool is_user(Provenance p) { return p == Provenance::Cli || p == Provenance::Config; }

template <typename T>
struct Setting {
  T value{};
  Provenance provenance = Provenance::Default;
};

struct Settings {
  Setting<ProjectDomain> domain{ProjectDomain::SoftwareTools, Provenance::Default};
  Setting<WritingStyle> writing_style{WritingStyle::Descriptive, Provenance::Default};
  Setting<Structure> structure{Structure::ChangeType, Provenance::Default};
  Setting<double> mst{0.12, Provenance::Default};
  Setting<bool> group_commits{true, Provenance::Default};
};

// --- project domain -------------------------------------------------------

struct DomainDecision {
  ProjectDomain domain = ProjectDomain::SoftwareTools;
  Provenance provenance = Provenance::Default;
  std::string method;  // "llm", "heuristic" or "default"
};

/// Keyword fallback over description + README. Hits per domain are counted
/// on word boundaries and the domain with most hits wins (ties in enum
/// order). nullopt when nothing matches.
///   SoftwareTools:          command-line, cli, tool, utility, linter, formatter, plugin, generator
///   LibrariesAndFrameworks: library, framework, sdk, bindings, package, toolkit, api client
///   SystemSoftware:         operating system, kernel, database, driver, runtime, compiler,
///                           virtual machine, file system, emulator, server
///   ApplicationSoftware:    app, application, desktop, mobile, game, editor, player, browser,
///                           dashboard, web app
std::optional<ProjectDomain> heuristic_domain(std::string_view description, std::string_view readme);

/// Asks the LLM with the few-shot `classify_domain` template; falls back to
/// the keyword heuristic when the answer has no known label, the provider
/// fails or `offline` is set, and to SoftwareTools (provenance Default) when
/// description and README are both empty. Never throws Error.
DomainDecision classify_project_domain(const ProjectContext& project, LlmProvider& provider,
                                       const TemplateLibrary& templates, const CompletionParams& params,
                                       bool offline = false);

// --- commit message quality -------------------------------------------------

enum class MessageQuality { Good, Poor };
std::string_view to_string(MessageQuality q);

struct QualityAssessment {
  MessageQuality quality = MessageQuality::Poor;
  std::size_t sampled = 0;
  std::size_t good = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kQualitySampleSize = 30;

/// Classifies a seeded uniform sample of up to 30 messages good/poor with the
/// `commit_quality` template. Good iff at least two thirds of the sample is
/// good. Unparseable answers count as poor; a provider failure makes the
/// whole assessment poor.
QualityAssessment assess_commit_message_quality(const std::vector<Commit>& commits, LlmProvider& provider,
                                                const TemplateLibrary& templates,
                                                const CompletionParams& params, std::uint64_t seed,
                                                std::size_t parallelism = 4);

// --- writing style ------------------------------------------------------------

/// Style used when the user has not chosen one:
/// LibrariesAndFrameworks, SoftwareTools -> descriptive;
/// ApplicationSoftware, SystemSoftware -> persuasive.
WritingStyle default_style_for(ProjectDomain domain);

struct StyleDecision {
  WritingStyle style = WritingStyle::Descriptive;
  bool overridden = false;  // expository replaced because messages are poor
  std::string notice;
};

/// The user's choice wins, except expository with poor commit messages,
/// which becomes persuasive.
StyleDecision select_writing_style(ProjectDomain domain, MessageQuality quality,
                                   std::optional<WritingStyle> user_choice);

// --- minimum significance threshold -----------------------------------------

struct MstBand {
  double default_mst = 0.12;
  double floor = 0.05;
  double ceiling = 0.20;
  double step = 0.01;
  std::size_t min_entries = 3;
  std::size_t max_entries = 40;
};

/// Starts at band.default_mst. Too few entries passing: lower by `step`
/// down to `floor`; too many: raise up to `ceiling`. Returns the first
/// threshold whose count lies in [min_entries, max_entries], else the
/// boundary reached. `entries_passing` must be non-increasing.
double tune_mst(const std::function<std::size_t(double)>& entries_passing, const MstBand& band = {});

}  // namespace smartnote
