// smartnote: release notes from the commits between two tags.
//
//   smartnote generate --repo . --from v1.0.0 --to v1.1.0
//   smartnote evaluate NOTE.md [OTHER.md] --commits commits.txt
//   smartnote analyze --repo . --from v1.0.0 --to v1.1.0 [--json]
//   smartnote analyze --parity tests/fixtures/parity/fixture.json
//
// Exit codes: 0 ok, 2 empty range, 3 provider failure, 4 bad input.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "smartnote/assets.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/metrics.hpp"
#include "smartnote/parity.hpp"
#include "smartnote/pipeline.hpp"

namespace {

using namespace smartnote;

constexpr int kExitEmptyRange = 2;
constexpr int kExitProvider = 3;
constexpr int kExitBadInput = 4;

extern "C" void on_sigint(int) { request_cancellation(); }

// Raw flag values; converted to GenerateOptions once CLI11 has parsed.
struct Flags {
  std::string repo = ".";
  std::string from, to;
  std::string domain, style, structure, provider, model, output, config;
  std::string category_model, significance_model, embeddings, mock_script;
  std::string llm_base_url, github_api_url, title, description;
  std::optional<double> mst;
  std::optional<bool> group;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> parallelism, diff_budget;
  bool offline = false, llm_reorder = false;
  bool raw_llm = false, no_composer = false, random_context = false;
};

void add_range_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--repo", f.repo, "Path to the git repository")->capture_default_str();
  cmd.add_option("--from", f.from, "Previous release tag")->required();
  cmd.add_option("--to", f.to, "New release tag")->required();
  cmd.add_option("--config", f.config, "Settings file (default: <repo>/.smartnote)");
  cmd.add_option("--domain", f.domain, "ApplicationSoftware, SystemSoftware, LibrariesAndFrameworks, SoftwareTools");
  cmd.add_option("--category-model", f.category_model, "Category model JSON");
  cmd.add_option("--significance-model", f.significance_model, "Significance model JSON");
  cmd.add_option("--embeddings", f.embeddings, "Precomputed embedding sidecar (JSONL)");
  cmd.add_option("--parallelism", f.parallelism, "Concurrent model and provider calls");
}

template <typename T, typename Parse>
std::optional<Setting<T>> cli_setting(const std::string& raw, const char* flag, Parse parse) {
  if (raw.empty()) return std::nullopt;
  const auto v = parse(raw);
  if (!v) throw CLI::ValidationError(flag, "unrecognised value '" + raw + "'");
  return Setting<T>{*v, Provenance::Cli};
}

std::optional<std::string> nonempty(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<std::string>(s);
}

std::optional<std::filesystem::path> path_or_null(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s);
}

GenerateOptions to_options(const Flags& f) {
  GenerateOptions o;
  o.repo = f.repo;
  o.from_tag = f.from;
  o.to_tag = f.to;
  o.domain = cli_setting<ProjectDomain>(f.domain, "--domain", parse_project_domain);
  o.style = cli_setting<WritingStyle>(f.style, "--style", parse_writing_style);
  o.structure = cli_setting<Structure>(f.structure, "--structure", parse_structure);
  if (f.mst) o.mst = Setting<double>{*f.mst, Provenance::Cli};
  if (f.group) o.group = Setting<bool>{*f.group, Provenance::Cli};
  if (!f.provider.empty()) {
    o.provider = parse_provider_kind(f.provider);
    if (!o.provider) throw CLI::ValidationError("--provider", "expected live or mock");
  }
  o.model_id = nonempty(f.model);
  o.seed = f.seed;
  o.parallelism = f.parallelism;
  o.diff_budget = f.diff_budget;
  o.category_model = path_or_null(f.category_model);
  o.significance_model = path_or_null(f.significance_model);
  o.embeddings = path_or_null(f.embeddings);
  o.mock_script = path_or_null(f.mock_script);
  o.llm_base_url = nonempty(f.llm_base_url);
  o.github_api_url = nonempty(f.github_api_url);
  if (f.offline) o.offline = true;
  if (f.llm_reorder) o.llm_reorder = true;
  o.title = nonempty(f.title);
  o.description = nonempty(f.description);
  o.output = path_or_null(f.output);
  o.raw_llm = f.raw_llm;
  o.no_composer = f.no_composer;
  o.random_context = f.random_context;

  const auto config = f.config.empty() ? std::filesystem::path(f.repo) / ".smartnote" : std::filesystem::path(f.config);
  if (!f.config.empty() && !std::filesystem::exists(config))
    throw ParseError("config file " + config.string() + " does not exist");
  apply_config(o, ConfigFile::load(config));
  return o;
}

void write_output(const std::optional<std::filesystem::path>& path, const std::string& content) {
  if (!path) {
    std::cout << content;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path->string());
  out << content;
}

int run_generate(const Flags& f) {
  const auto options = to_options(f);
  auto provider = make_provider(options);
  const bool mock = options.provider.value_or(ProviderKind::Live) == ProviderKind::Mock;
  std::unique_ptr<HostingClient> hosting;
  if (!mock && !options.offline.value_or(false)) {
    GitHubClient::Options gh;
    if (options.github_api_url) gh.base_url = *options.github_api_url;
    hosting = std::make_unique<GitHubClient>(gh);
  }
  const auto result = generate(options, *provider, hosting.get());
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  write_output(options.output, result.markdown);
  return 0;
}

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_evaluate(const std::vector<std::string>& notes, const std::string& commits_path, bool as_json) {
  std::optional<std::vector<CommitRef>> commits;
  if (!commits_path.empty()) commits = parse_commit_list(read_input(commits_path));
  std::vector<std::pair<std::string, MetricReport>> reports;
  for (const auto& n : notes) reports.emplace_back(n, evaluate_note(read_input(n), commits ? &*commits : nullptr));
  if (as_json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [name, r] : reports) {
      auto doc = nlohmann::ordered_json::parse(to_json(r));
      doc["note"] = name;
      arr.push_back(std::move(doc));
    }
    std::cout << (arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
  } else {
    std::cout << format_table(reports);
  }
  return 0;
}

int run_parity(const std::string& fixture_path, double tolerance) {
  const auto fixture = ParityFixture::load(fixture_path);
  const auto rep = replay_parity(fixture, tolerance);
  std::printf("category records      %zu\n", rep.category_records);
  std::printf("significance records  %zu\n", rep.significance_records);
  std::printf("label mismatches      %zu\n", rep.label_mismatches);
  std::printf("max deviation         %.3e (category %.3e, significance %.3e)\n", rep.max_deviation(),
              rep.max_category_deviation, rep.max_significance_deviation);
  for (const auto& failure : rep.failures) std::printf("  %s\n", failure.c_str());
  return rep.within(tolerance) ? 0 : 1;
}

int run_analyze(const Flags& f, bool as_json) {
  auto options = to_options(f);
  const auto r = analyze(options);
  if (as_json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : r.analyses)
      arr.push_back({{"sha", a.sha}, {"category", a.category}, {"confidence", a.category_confidence},
                     {"significance", a.significance}, {"fallback", a.fallback}});
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  std::printf("%-12s %-9s %10s %12s\n", "sha", "category", "confidence", "significance");
  for (std::size_t i = 0; i < r.analyses.size(); ++i) {
    const auto& a = r.analyses[i];
    std::printf("%-12s %-9s %10.4f %12.4f%s\n", a.sha.substr(0, 12).c_str(), a.category.c_str(),
                a.category_confidence, a.significance, a.fallback ? "  (fallback)" : "");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smartnote: release notes from git history"};
  app.set_version_flag("--version", std::string(smartnote::kToolVersion));
  app.require_subcommand(1);

  Flags gen;
  auto* g = app.add_subcommand("generate", "Generate a release note");
  add_range_flags(*g, gen);
  g->add_option("--style", gen.style, "expository, descriptive or persuasive");
  g->add_option("--structure", gen.structure, "ChangeType, AffectedModule or ChangePriority");
  g->add_option("--mst", gen.mst, "Minimum significance threshold")->check(CLI::Range(0.0, 1.0));
  g->add_flag("--group,!--no-group", gen.group, "Group commits of one pull request");
  g->add_option("--provider", gen.provider, "live or mock");
  g->add_option("--model", gen.model, "Model id for the live provider");
  g->add_option("--output,-o", gen.output, "Write markdown here instead of stdout");
  g->add_option("--seed", gen.seed, "Seed for sampling and --random-context");
  g->add_option("--diff-budget", gen.diff_budget, "Approximate tokens of diff per changeset")->check(CLI::Range(64, 1 << 24));
  g->add_option("--mock-script", gen.mock_script, "Scripted mock responses (JSON)");
  g->add_option("--llm-base-url", gen.llm_base_url, "OpenAI-compatible endpoint");
  g->add_option("--github-api-url", gen.github_api_url, "GitHub API endpoint");
  g->add_option("--title", gen.title, "Note title");
  g->add_option("--description", gen.description, "Project description (overrides the forge)");
  g->add_flag("--offline", gen.offline, "Skip the forge API");
  g->add_flag("--llm-reorder", gen.llm_reorder, "Let the LLM reorder sections");
  g->add_flag("--raw-llm", gen.raw_llm, "Ablation: one plain prompt over the commit titles");
  g->add_flag("--no-composer", gen.no_composer, "Ablation: skip the composer");
  g->add_flag("--random-context", gen.random_context, "Ablation: random domain, Unknown release type");

  std::vector<std::string> notes;
  std::string commits_path;
  bool eval_json = false;
  auto* e = app.add_subcommand("evaluate", "Score release notes");
  e->add_option("notes", notes, "Markdown release notes")->required()->check(CLI::ExistingFile);
  e->add_option("--commits", commits_path, "Commit list, one sha[,pr] per line")->check(CLI::ExistingFile);
  e->add_flag("--json", eval_json, "JSON instead of a table");

  Flags an;
  bool an_json = false;
  std::string parity;
  double tolerance = 1e-6;
  auto* a = app.add_subcommand("analyze", "Per-commit category and significance");
  add_range_flags(*a, an);
  a->add_flag("--json", an_json, "JSON instead of a table");
  a->add_option("--parity", parity, "Replay a parity fixture instead of mining");
  a->add_option("--tolerance", tolerance, "Parity tolerance")->capture_default_str();
  a->preparse_callback([&](std::size_t) {
    // Parity replay needs no range.
    for (const auto& arg : std::vector<std::string>(argv, argv + argc))
      if (arg == "--parity" || arg.starts_with("--parity=")) {
        a->get_option("--from")->required(false);
        a->get_option("--to")->required(false);
      }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : kExitBadInput;
  }

  std::signal(SIGINT, on_sigint);
  try {
    if (*g) return run_generate(gen);
    if (*e) return run_evaluate(notes, commits_path, eval_json);
    if (!parity.empty()) return run_parity(parity, tolerance);
    return run_analyze(an, an_json);
  } catch (const CLI::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitBadInput;
  } catch (const EmptyRange& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitEmptyRange;
  } catch (const ProviderError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitProvider;
  } catch (const Timeout& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitProvider;
  } catch (const smartnote::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitBadInput;
  }
}
