#include "smartnote/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <random>

#include "smartnote/assets.hpp"
#include "smartnote/diagnostics.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/random.hpp"
#include "smartnote/summariser.hpp"
#include "smartnote/text.hpp"

namespace smartnote {
namespace {

template <typename T, typename Parse>
void fill(std::optional<Setting<T>>& slot, const ConfigFile& cfg, const char* key, Parse parse) {
  if (slot) return;
  const auto raw = cfg.get(key);
  if (!raw) return;
  const auto v = parse(*raw);
  if (!v) throw ParseError("config: bad value for " + std::string(key) + ": " + *raw);
  slot = Setting<T>{*v, Provenance::Config};
}

template <typename T, typename Parse>
void fill_plain(std::optional<T>& slot, const ConfigFile& cfg, const char* key, Parse parse) {
  if (slot) return;
  const auto raw = cfg.get(key);
  if (!raw) return;
  const auto v = parse(*raw);
  if (!v) throw ParseError("config: bad value for " + std::string(key) + ": " + *raw);
  slot = *v;
}

std::optional<double> parse_double(std::string_view s) {
  try {
    std::size_t used = 0;
    const std::string str(text::trim(s));
    const double v = std::stod(str, &used);
    if (used != str.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  const std::string str(text::trim(s));
  if (str.empty() || !std::all_of(str.begin(), str.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  try {
    return std::stoull(str);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<std::size_t> parse_size(std::string_view s) {
  const auto v = parse_u64(s);
  if (!v) return std::nullopt;
  return static_cast<std::size_t>(*v);
}

std::optional<std::string> as_string(std::string_view s) { return std::string(s); }
std::optional<std::filesystem::path> as_path(std::string_view s) { return std::filesystem::path(std::string(s)); }

std::string iso_utc(Timestamp t) {
  const std::time_t tt = t.time_since_epoch().count();
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

template <typename T>
SettingRecord record(const char* key, const Setting<T>& s, std::string value) {
  return {key, std::move(value), std::string(to_string(s.provenance))};
}

std::size_t mock_calls(LlmProvider& p) {
  if (const auto* m = dynamic_cast<MockProvider*>(&p)) return m->call_count();
  return 0;
}

struct Context {
  std::vector<Commit> commits;
  ReleaseContext release;
  ProjectContext project;
};

Context mine(const GenerateOptions& options, HostingClient* hosting, Diagnostics& diag) {
  Context c;
  c.commits = detect_pr_links(resolve_range(options.repo, options.from_tag, options.to_tag));
  c.release = compute_release_context(c.commits, options.from_tag, options.to_tag);
  c.project = mine_local_project(options.repo, options.from_tag, options.to_tag);
  if (hosting && !c.project.remote_url.empty()) {
    try {
      c.project = merge_project_context(c.project, fetch_remote_context(c.project.remote_url, *hosting));
    } catch (const Error& e) {
      diag.warn("remote", std::string("remote project data unavailable: ") + e.what());
      c.project.degraded = true;
    }
    if (c.project.degraded)
      diag.warn("degraded", "remote project data unavailable; stars, issues, PRs and comments count as 0");
  }
  if (options.description) c.project.description = *options.description;
  return c;
}

CommitAnalyser make_analyser(const GenerateOptions& options, const EmbeddingSidecar* sidecar) {
  if (!options.category_model && !options.significance_model) return CommitAnalyser::load_default(sidecar);
  return CommitAnalyser::load(options.category_model.value_or(asset_path("models/category.json")),
                              options.significance_model.value_or(asset_path("models/significance.json")), sidecar);
}

}  // namespace

std::optional<ProviderKind> parse_provider_kind(std::string_view s) {
  const auto v = text::to_lower(text::trim(s));
  if (v == "live") return ProviderKind::Live;
  if (v == "mock") return ProviderKind::Mock;
  return std::nullopt;
}

void apply_config(GenerateOptions& o, const ConfigFile& cfg) {
  fill(o.domain, cfg, "domain", parse_project_domain);
  fill(o.style, cfg, "style", parse_writing_style);
  fill(o.structure, cfg, "structure", parse_structure);
  fill(o.mst, cfg, "mst", [](std::string_view s) -> std::optional<double> {
    const auto v = parse_double(s);
    if (!v || *v < 0.0 || *v > 1.0) return std::nullopt;
    return v;
  });
  fill(o.group, cfg, "group", parse_bool);
  fill_plain(o.provider, cfg, "provider", parse_provider_kind);
  fill_plain(o.model_id, cfg, "model", as_string);
  fill_plain(o.seed, cfg, "seed", parse_u64);
  fill_plain(o.parallelism, cfg, "parallelism", parse_size);
  fill_plain(o.diff_budget, cfg, "diff-budget", parse_size);
  fill_plain(o.category_model, cfg, "category-model", as_path);
  fill_plain(o.significance_model, cfg, "significance-model", as_path);
  fill_plain(o.embeddings, cfg, "embeddings", as_path);
  fill_plain(o.mock_script, cfg, "mock-script", as_path);
  fill_plain(o.llm_base_url, cfg, "llm-base-url", as_string);
  fill_plain(o.github_api_url, cfg, "github-api-url", as_string);
  fill_plain(o.offline, cfg, "offline", parse_bool);
  fill_plain(o.llm_reorder, cfg, "llm-reorder", parse_bool);
  fill_plain(o.title, cfg, "title", as_string);
  fill_plain(o.description, cfg, "description", as_string);
  fill_plain(o.output, cfg, "output", as_path);
}

std::unique_ptr<LlmProvider> make_provider(const GenerateOptions& options) {
  if (options.provider.value_or(ProviderKind::Live) == ProviderKind::Mock) {
    if (options.mock_script) return std::make_unique<MockProvider>(MockScript::load(*options.mock_script));
    return std::make_unique<MockProvider>();
  }
  HttpProvider::Options http;
  if (options.llm_base_url) http.base_url = *options.llm_base_url;
  return std::make_unique<HttpProvider>(http);
}

ProjectDomain random_domain(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return kProjectDomains[uniform_below(rng, kProjectDomains.size())];
}

GenerateResult generate(const GenerateOptions& options, LlmProvider& provider, HostingClient* hosting) {
  Diagnostics diag;
  const auto seed = options.seed.value_or(kDefaultSeed);
  const auto parallelism = std::max<std::size_t>(1, options.parallelism.value_or(4));
  CompletionParams params;
  params.model_id = options.model_id.value_or(params.model_id);
  const auto templates = TemplateLibrary::load_dir(asset_dir() / "prompts");

  auto ctx = mine(options, hosting, diag);
  GenerateResult result;
  Settings& s = result.settings;
  std::string domain_method;

  if (options.random_context) {
    if (options.domain) diag.warn("random-domain", "--random-context ignores the configured project domain");
    s.domain = {random_domain(seed), Provenance::Inferred};
    ctx.release.release_type = ReleaseType::Unknown;
    domain_method = "random";
  } else if (options.domain) {
    s.domain = *options.domain;
    domain_method = "user";
  } else {
    const auto d = classify_project_domain(ctx.project, provider, templates, params);
    s.domain = {d.domain, d.provenance};
    domain_method = d.method;
  }
  ctx.project.domain = s.domain.value;

  NoteMetadata meta;
  meta.extra["tool"] = "smartnote " + std::string(kToolVersion);
  meta.extra["provider"] = provider.name();
  meta.extra["model"] = params.model_id;
  meta.extra["seed"] = std::to_string(seed);
  meta.extra["range"] = options.from_tag + ".." + options.to_tag;
  meta.extra["domain_method"] = domain_method;
  meta.extra["release_type"] = std::string(to_string(ctx.release.release_type));
  Timestamp latest{};
  for (const auto& c : ctx.commits) latest = std::max(latest, c.timestamp);
  meta.generated_at = iso_utc(latest);
  const std::string title = options.title.value_or(ctx.project.name + " " + options.to_tag);

  if (options.raw_llm) {
    meta.extra["mode"] = "raw-llm";
    meta.settings.push_back(record("domain", s.domain, std::string(to_string(s.domain.value))));
    std::string lines;
    for (const auto& c : ctx.commits) lines += "- " + text::title_of(c.message) + "\n";
    const auto& tmpl = templates.get("raw_release_note");
    const auto prompt = render_prompt(tmpl, {{"project", ctx.project.name}, {"version", options.to_tag}, {"commits", lines}});
    auto body = std::string(text::trim(provider.complete({tmpl.id, prompt, tmpl.max_output_tokens}, params)));
    meta.warnings = diag.warnings();
    ReleaseNote empty;
    empty.metadata = meta;
    result.note = empty;
    result.markdown = body + "\n\n" + render_markdown(empty);
    result.commits = std::move(ctx.commits);
    result.warnings = meta.warnings;
    result.llm_calls = mock_calls(provider);
    return result;
  }

  std::optional<EmbeddingSidecar> sidecar;
  if (options.embeddings) sidecar = EmbeddingSidecar::load(*options.embeddings);
  const auto analyser = make_analyser(options, sidecar ? &*sidecar : nullptr);
  result.analyses = analyser.analyse_all(ctx.commits, ctx.release, ctx.project, parallelism, &diag);

  s.structure = options.structure.value_or(Setting<Structure>{Structure::ChangeType, Provenance::Default});
  s.group_commits = options.group.value_or(Setting<bool>{true, Provenance::Default});
  if (options.style) {
    s.writing_style = *options.style;
    if (options.style->value == WritingStyle::Expository) {
      const auto q = assess_commit_message_quality(ctx.commits, provider, templates, params, seed, parallelism);
      meta.extra["message_quality"] = std::string(to_string(q.quality)) + " (" + std::to_string(q.good) + "/" +
                                      std::to_string(q.sampled) + ")";
      const auto d = select_writing_style(s.domain.value, q.quality, WritingStyle::Expository);
      if (d.overridden) {
        s.writing_style = {d.style, Provenance::Inferred};
        diag.warn("style-override", d.notice);
      }
    }
  } else {
    s.writing_style = {default_style_for(s.domain.value), Provenance::Inferred};
  }

  const auto changesets = pack_changesets(result.analyses, ctx.commits, s.group_commits.value,
                                          options.diff_budget.value_or(kDefaultDiffBudget), &diag);
  if (options.mst) {
    s.mst = *options.mst;
  } else {
    const double t = tune_mst([&](double mst) {
      return static_cast<std::size_t>(std::count_if(changesets.begin(), changesets.end(),
                                                    [&](const Changeset& c) { return c.significance >= mst; }));
    });
    s.mst = {t, Provenance::Inferred};
  }

  SummariserContext sctx{&provider, &templates, params, &diag};
  auto entries = summarise_all(changesets, s.writing_style.value, sctx, parallelism);
  result.entries_before_composer = entries.size();

  ReleaseNote note;
  note.title = title;
  if (options.no_composer) {
    meta.extra["mode"] = "no-composer";
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.order < b.order; });
    note.headings = false;
    note.sections.push_back({"", std::move(entries)});
  } else {
    meta.extra["mode"] = "standard";
    ComposerContext cctx{&provider, &templates, params, &diag};
    auto sections = organise(entries, s.structure.value);
    sections = merge_related(std::move(sections), s.structure.value, cctx);
    sections = update_entity_mentions(std::move(sections), extract_renames(ctx.commits));
    const auto& profiles = default_domain_profiles();
    const auto it = profiles.find(s.domain.value);
    const DomainProfile profile = it == profiles.end() ? DomainProfile{} : it->second;
    auto personalised = personalise(std::move(sections), s.mst.value, s.structure.value, profile, cctx);
    meta.dropped_entries = personalised.dropped;
    sections = std::move(personalised.sections);
    if (s.structure.value == Structure::ChangeType)
      sections = options.llm_reorder.value_or(false) ? reorder_sections_llm(std::move(sections), cctx)
                                                     : reorder_sections(std::move(sections));
    note.sections = std::move(sections);
  }

  meta.settings = {
      record("domain", s.domain, std::string(to_string(s.domain.value))),
      record("writing_style", s.writing_style, std::string(to_string(s.writing_style.value))),
      record("structure", s.structure, std::string(to_string(s.structure.value))),
      record("mst", s.mst, fixed2(s.mst.value)),
      record("group_commits", s.group_commits, s.group_commits.value ? "true" : "false"),
  };
  meta.warnings = diag.warnings();
  note.metadata = std::move(meta);
  result.markdown = render_markdown(note);
  result.note = std::move(note);
  result.commits = std::move(ctx.commits);
  result.warnings = result.note.metadata.warnings;
  result.llm_calls = mock_calls(provider);
  return result;
}

AnalyzeResult analyze(const GenerateOptions& options) {
  Diagnostics diag;
  auto ctx = mine(options, nullptr, diag);
  ProjectDomain domain = ProjectDomain::SoftwareTools;
  if (options.domain) {
    domain = options.domain->value;
  } else if (const auto h = heuristic_domain(ctx.project.description, ctx.project.readme)) {
    domain = *h;
  }
  ctx.project.domain = domain;
  std::optional<EmbeddingSidecar> sidecar;
  if (options.embeddings) sidecar = EmbeddingSidecar::load(*options.embeddings);
  const auto analyser = make_analyser(options, sidecar ? &*sidecar : nullptr);
  AnalyzeResult r;
  r.analyses = analyser.analyse_all(ctx.commits, ctx.release, ctx.project,
                                    std::max<std::size_t>(1, options.parallelism.value_or(4)), &diag);
  r.commits = std::move(ctx.commits);
  r.release = ctx.release;
  r.project = std::move(ctx.project);
  return r;
}

}  // namespace smartnote
