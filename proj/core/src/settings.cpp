#include "smartnote/settings.hpp"

#include <cmath>

#include "smartnote/classification.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/parallel.hpp"
#include "smartnote/random.hpp"
#include "smartnote/text.hpp"

namespace smartnote {
namespace {

constexpr std::size_t kReadmeBytes = 6000;

struct Keywords {
  ProjectDomain domain;
  std::vector<std::string_view> phrases;
};

const std::vector<Keywords>& keyword_table() {
  static const std::vector<Keywords> table = {
      {ProjectDomain::ApplicationSoftware,
       {"app", "application", "desktop", "mobile", "game", "editor", "player", "browser", "dashboard",
        "web app"}},
      {ProjectDomain::SystemSoftware,
       {"operating system", "kernel", "database", "driver", "runtime", "compiler", "virtual machine",
        "file system", "emulator", "server"}},
      {ProjectDomain::LibrariesAndFrameworks,
       {"library", "framework", "sdk", "bindings", "package", "toolkit", "api client"}},
      {ProjectDomain::SoftwareTools,
       {"command line", "cli", "tool", "utility", "linter", "formatter", "plugin", "generator"}},
  };
  return table;
}

std::size_t count_phrase(const std::string& haystack, std::string_view phrase) {
  const std::string needle = " " + std::string(phrase) + " ";
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

// Cut at a byte limit without splitting a UTF-8 sequence.
std::string clip_utf8(std::string_view s, std::size_t limit) {
  if (s.size() <= limit) return std::string(s);
  std::size_t cut = limit;
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  return std::string(s.substr(0, cut));
}

std::vector<std::string> domain_labels() {
  std::vector<std::string> labels;
  for (auto d : kProjectDomains) labels.emplace_back(display_name(d));
  return labels;
}

const LabelAliases& domain_aliases() {
  static const LabelAliases aliases = {
      {"Libraries & Frameworks", {"LibrariesAndFrameworks", "library", "framework"}},
      {"Software Tools", {"SoftwareTools", "tooling", "developer tool"}},
      {"Application Software", {"ApplicationSoftware", "end-user application"}},
      {"System Software", {"SystemSoftware"}},
  };
  return aliases;
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Cli: return "cli";
    case Provenance::Config: return "config";
    case Provenance::Inferred: return "inferred";
    case Provenance::Default: return "default";
  }
  return "default";
}

std::string_view to_string(MessageQuality q) { return q == MessageQuality::Good ? "good" : "poor"; }

std::optional<ProjectDomain> heuristic_domain(std::string_view description, std::string_view readme) {
  std::string joined = " ";
  for (const auto& w : text::words(std::string(description) + "\n" + std::string(readme))) {
    joined += w;
    joined += ' ';
  }
  std::optional<ProjectDomain> best;
  std::size_t best_hits = 0;
  for (const auto& row : keyword_table()) {
    std::size_t hits = 0;
    for (auto phrase : row.phrases) {
      std::string normalised;
      for (const auto& w : text::words(phrase)) normalised += (normalised.empty() ? "" : " ") + w;
      hits += count_phrase(joined, normalised);
    }
    if (hits > best_hits || (hits == best_hits && hits > 0 && best && row.domain < *best)) {
      best = row.domain;
      best_hits = hits;
    }
  }
  return best;
}

DomainDecision classify_project_domain(const ProjectContext& project, LlmProvider& provider,
                                       const TemplateLibrary& templates, const CompletionParams& params,
                                       bool offline) {
  if (text::trim(project.description).empty() && text::trim(project.readme).empty())
    return {ProjectDomain::SoftwareTools, Provenance::Default, "default"};

  if (!offline && templates.contains("classify_domain")) {
    try {
      const auto& tmpl = templates.get("classify_domain");
      const std::string prompt = render_prompt(tmpl, {{"name", project.name},
                                                      {"description", project.description},
                                                      {"readme", clip_utf8(project.readme, kReadmeBytes)}});
      const auto raw = provider.complete({tmpl.id, prompt, tmpl.max_output_tokens}, params);
      const auto label = parse_classification(raw, domain_labels(), domain_aliases());
      for (auto d : kProjectDomains)
        if (display_name(d) == label) return {d, Provenance::Inferred, "llm"};
    } catch (const Error&) {
      // Fall through to the keyword heuristic.
    }
  }
  if (const auto d = heuristic_domain(project.description, project.readme))
    return {*d, Provenance::Inferred, "heuristic"};
  return {ProjectDomain::SoftwareTools, Provenance::Default, "default"};
}

QualityAssessment assess_commit_message_quality(const std::vector<Commit>& commits, LlmProvider& provider,
                                                const TemplateLibrary& templates,
                                                const CompletionParams& params, std::uint64_t seed,
                                                std::size_t parallelism) {
  QualityAssessment out;
  out.seed = seed;
  const auto picked = sample_indices(commits.size(), kQualitySampleSize, seed);
  out.sampled = picked.size();
  if (picked.empty()) return out;
  const auto& tmpl = templates.get("commit_quality");
  const std::vector<std::string> labels = {"good", "poor"};
  try {
    const auto verdicts = parallel_map(picked.size(), parallelism, [&](std::size_t i) -> int {
      const auto& c = commits[picked[i]];
      const auto prompt = render_prompt(tmpl, {{"message", c.message}});
      const auto raw = provider.complete({tmpl.id, prompt, tmpl.max_output_tokens}, params);
      try {
        return parse_classification(raw, labels) == "good" ? 1 : 0;
      } catch (const NoLabelFound&) {
        return 0;
      }
    });
    for (int v : verdicts) out.good += static_cast<std::size_t>(v);
  } catch (const ProviderError&) {
    out.good = 0;
    return out;
  } catch (const Timeout&) {
    out.good = 0;
    return out;
  }
  out.quality = 3 * out.good >= 2 * out.sampled ? MessageQuality::Good : MessageQuality::Poor;
  return out;
}

WritingStyle default_style_for(ProjectDomain domain) {
  switch (domain) {
    case ProjectDomain::LibrariesAndFrameworks:
    case ProjectDomain::SoftwareTools: return WritingStyle::Descriptive;
    case ProjectDomain::ApplicationSoftware:
    case ProjectDomain::SystemSoftware: return WritingStyle::Persuasive;
  }
  return WritingStyle::Descriptive;
}

StyleDecision select_writing_style(ProjectDomain domain, MessageQuality quality,
                                   std::optional<WritingStyle> user_choice) {
  if (!user_choice) return {default_style_for(domain), false, ""};
  if (*user_choice == WritingStyle::Expository && quality == MessageQuality::Poor)
    return {WritingStyle::Persuasive, true,
            "expository style needs informative commit messages; using persuasive instead"};
  return {*user_choice, false, ""};
}

double tune_mst(const std::function<std::size_t(double)>& entries_passing, const MstBand& band) {
  if (!(band.step > 0) || band.floor > band.default_mst || band.default_mst > band.ceiling)
    throw std::invalid_argument("MST band must satisfy floor <= default <= ceiling and step > 0");
  // Step in whole multiples of `step` so repeated additions do not drift.
  auto at = [&](long k) { return std::round((band.default_mst + static_cast<double>(k) * band.step) * 1e9) / 1e9; };
  const double eps = band.step * 1e-6;
  const auto start = entries_passing(band.default_mst);
  if (start >= band.min_entries && start <= band.max_entries) return band.default_mst;
  const long dir = start < band.min_entries ? -1 : 1;
  double last = band.default_mst;
  for (long k = dir;; k += dir) {
    double t = at(k);
    if (dir < 0 && t < band.floor - eps) t = band.floor;
    if (dir > 0 && t > band.ceiling + eps) t = band.ceiling;
    if (t == last) return last;
    last = t;
    const auto n = entries_passing(t);
    if (n >= band.min_entries && n <= band.max_entries) return t;
    if ((dir < 0 && n > band.max_entries) || (dir > 0 && n < band.min_entries)) return t;
  }
}

}  // namespace smartnote
