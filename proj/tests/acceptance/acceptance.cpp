// Prints one PASS/FAIL line per acceptance criterion and exits non-zero when
// any of them fails. Tolerances and time budgets are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "smartnote/assets.hpp"
#include "smartnote/composer.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/metrics.hpp"
#include "smartnote/parity.hpp"
#include "smartnote/pipeline.hpp"
#include "smartnote/semver.hpp"
#include "smartnote/settings.hpp"
#include "smartnote/tree_model.hpp"
#include "test_support.hpp"

using namespace smartnote;
using namespace smartnote::testing;

namespace {

constexpr double kEntropyTol = 1e-6;
constexpr double kAriTol = 0.01;
constexpr double kDaleChallTol = 0.001;
constexpr double kSoftmaxTol = 1e-9;
constexpr double kParityTol = 1e-6;

using Clock = std::chrono::steady_clock;

// A criterion collects failed checks; an empty list means it passed.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok) failed_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failed_.empty(); }
  std::size_t count() const { return count_; }
  const std::vector<std::string>& failed() const { return failed_; }
  const std::vector<std::string>& notes() const { return notes_; }

  // Time spent in the measured part of the criterion; a budget of 0 means none.
  double measured_ms = -1.0;

 private:
  std::size_t count_ = 0;
  std::vector<std::string> failed_;
  std::vector<std::string> notes_;
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

struct Range {
  std::string repo, from, to;
};

const std::vector<Range>& fixture_ranges() {
  static const std::vector<Range> r = {{"linear", "v1.0.0", "v2.1.0"},
                                       {"orphan", "v1.0.0", "v2.0.0"},
                                       {"sample", "v1.0.0", "v1.1.0"},
                                       {"translations", "v1.2.0", "v1.3.0"},
                                       {"trivial", "v1.14.61", "v1.14.62"}};
  return r;
}

GenerateOptions options_for(const Range& r) {
  GenerateOptions o;
  o.repo = fixture_repo(r.repo);
  o.from_tag = r.from;
  o.to_tag = r.to;
  o.provider = ProviderKind::Mock;
  return o;
}

std::vector<std::string> sample_args() {
  return {"generate", "--repo", fixture_repo("sample").string(), "--from", "v1.0.0", "--to", "v1.1.0",
          "--provider", "mock"};
}

std::vector<std::string> with(std::vector<std::string> args, const std::vector<std::string>& extra) {
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::string commit_list(std::size_t n, std::size_t cited, std::string& note) {
  // n commits, the first `cited` of them named by short sha in the note.
  std::string list;
  note = "## Changes\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto sha = fake_sha("cov" + std::to_string(n) + "-" + std::to_string(i));
    list += sha + "\n";
    if (i < cited) note += "- Changed part " + std::to_string(i) + " (" + sha.substr(0, 7) + ")\n";
  }
  if (cited == 0) note += "- Nothing cited here\n";
  return list;
}

// ---------------------------------------------------------------------------

void metric_oracles(Checks& c) {
  const auto t0 = Clock::now();
  const double e33 = entropy_of_counts({3, 3});
  c.expect(near(e33, 1.0, kEntropyTol), "entropy([3,3]) = " + fmt(e33));
  const double e13 = entropy_of_counts({1, 3});
  const double oracle13 = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  c.expect(near(e13, 0.8112781, kEntropyTol) && near(e13, oracle13, 1e-12), "entropy([1,3]) = " + fmt(e13, 9));
  const double e1 = information_entropy("## Features\n- a\n- b\n- c\n");
  c.expect(e1 == 0.0, "entropy(one section) = " + fmt(e1));
  const double e_note = information_entropy("## A\n- a\n- b\n- c\n## B\n- d\n- e\n- f\n");
  c.expect(near(e_note, 1.0, kEntropyTol), "entropy(note with 3+3 items) = " + fmt(e_note));

  const auto ari = readability("The cat sat.").ari;
  c.expect(near(ari, -5.80, kAriTol), "ARI(The cat sat.) = " + fmt(ari));
  const auto dc = readability("The big dog ran to the red house and sat.").dale_chall;
  c.expect(near(dc, 0.496, kDaleChallTol), "Dale-Chall(10 familiar words) = " + fmt(dc));

  for (const auto& [n, cited, expected] : std::vector<std::tuple<std::size_t, std::size_t, double>>{
           {5, 4, 0.8}, {4, 0, 0.0}, {10, 3, 0.3}}) {
    std::string note;
    const auto commits = parse_commit_list(commit_list(n, cited, note));
    const double cov = commit_coverage(note, commits);
    c.expect(cov == expected, "coverage " + std::to_string(cited) + "/" + std::to_string(n) + " = " + fmt(cov));
  }
  // PR citations count for every commit of the PR.
  const std::vector<CommitRef> pr_commits = {{fake_sha("p1"), 7}, {fake_sha("p2"), 7}, {fake_sha("p3"), 70}};
  const double pr_cov = commit_coverage("- Added x (#7)\n", pr_commits);
  c.expect(pr_cov == 2.0 / 3.0, "coverage via PR numbers = " + fmt(pr_cov));
  c.measured_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void determinism(Checks& c) {
  const auto dir = temp_dir("acceptance-nonet");
  const auto log = dir / "sockets.log";
  const auto t0 = Clock::now();
  const auto a = run_cli(sample_args(), log);
  const auto b = run_cli(sample_args(), log);
  c.measured_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  c.expect(a.exit_code == 0 && b.exit_code == 0,
           "mock runs exit 0 (got " + std::to_string(a.exit_code) + ", " + std::to_string(b.exit_code) + ")");
  c.expect(!a.out.empty() && a.out == b.out, "two mock runs are byte-identical");
  const bool quiet = !std::filesystem::exists(log) || std::filesystem::file_size(log) == 0;
  c.expect(quiet, "no socket opened by mock runs");

  // The harness must be able to see a socket: a live run is refused and logged.
  const auto control_log = dir / "control.log";
  const auto live = run_cli({"generate", "--repo", fixture_repo("linear").string(), "--from", "v1.0.0", "--to",
                             "v2.0.0", "--offline", "--domain", "SoftwareTools", "--llm-base-url",
                             "http://127.0.0.1:9/v1"},
                            control_log);
  const bool seen = std::filesystem::exists(control_log) && std::filesystem::file_size(control_log) > 0;
  c.expect(seen && live.exit_code == 3, "harness detects and refuses a live socket (exit " +
                                            std::to_string(live.exit_code) + ")");
  c.note(std::to_string(a.out.size()) + " bytes");
}

void self_coverage(Checks& c) {
  const auto t0 = Clock::now();
  for (const auto& r : fixture_ranges()) {
    auto o = options_for(r);
    o.mst = Setting<double>{0.0, Provenance::Cli};
    o.group = Setting<bool>{false, Provenance::Cli};
    MockProvider p;
    const auto res = generate(o, p, nullptr);
    std::vector<CommitRef> refs;
    for (const auto& cm : res.commits) refs.push_back({cm.sha, cm.pr_number});
    const double cov = commit_coverage(res.markdown, refs);
    c.expect(cov == 1.0, r.repo + " coverage " + fmt(cov));
    c.note(r.repo + "=" + fmt(cov, 3));
  }
  c.measured_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void mst_monotonicity(Checks& c) {
  const std::vector<double> levels = {0.05, 0.10, 0.15, 0.20};
  for (const auto& r : fixture_ranges()) {
    std::vector<std::set<std::string>> retained;
    for (double mst : levels) {
      auto o = options_for(r);
      o.mst = Setting<double>{mst, Provenance::Cli};
      MockProvider p;
      const auto res = generate(o, p, nullptr);
      std::set<std::string> shas;
      for (const auto& s : res.note.sections)
        for (const auto& e : s.entries)
          for (const auto& m : e.members) shas.insert(m.sha);
      retained.push_back(std::move(shas));
    }
    std::string sizes;
    for (std::size_t i = 0; i < retained.size(); ++i) {
      sizes += (i ? "/" : "") + std::to_string(retained[i].size());
      if (i == 0) continue;
      const bool nested = std::includes(retained[i - 1].begin(), retained[i - 1].end(), retained[i].begin(),
                                        retained[i].end());
      c.expect(nested, r.repo + ": commits kept at " + fmt(levels[i]) + " are not a subset of those at " +
                           fmt(levels[i - 1]));
    }
    c.note(r.repo + " " + sizes);
  }

  // tune_mst over random significance distributions.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> n(0, 120);
  double lo = 1.0, hi = 0.0;
  for (int round = 0; round < 500; ++round) {
    std::vector<double> scores(static_cast<std::size_t>(n(rng)));
    const double skew = 1.0 + 6.0 * u(rng);
    for (auto& s : scores) s = std::pow(u(rng), skew);
    const double t = tune_mst([&](double m) {
      return static_cast<std::size_t>(std::count_if(scores.begin(), scores.end(), [&](double s) { return s >= m; }));
    });
    lo = std::min(lo, t);
    hi = std::max(hi, t);
    c.expect(t >= 0.05 - 1e-12 && t <= 0.20 + 1e-12, "tune_mst gave " + fmt(t));
  }
  c.note("tune_mst range [" + fmt(lo, 3) + ", " + fmt(hi, 3) + "]");
}

void semver_table(Checks& c) {
  const std::vector<std::tuple<const char*, const char*, ReleaseType>> table = {
      {"1.2.3", "2.0.0", ReleaseType::Major},          {"v2.9.9", "v3.0.0", ReleaseType::Major},
      {"v1.2.3", "v1.3.0", ReleaseType::Minor},        {"0.9.0", "0.10.0", ReleaseType::Minor},
      {"V4.0.0", "v4.1.0+build.5", ReleaseType::Minor}, {"1.2.3", "1.2.4", ReleaseType::Patch},
      {"v24.3.7", "v24.3.25", ReleaseType::Patch},     {"v1.0.0", "1.0.1", ReleaseType::Patch},
      {"1.0.0-rc.1", "1.0.0", ReleaseType::Patch},     {"release-2023", "release-2024", ReleaseType::Unknown},
      {"v1.2", "v1.3", ReleaseType::Unknown},          {"1.2.3", "nightly", ReleaseType::Unknown}};
  for (const auto& [a, b, want] : table) {
    const auto got = classify_release_type(a, b);
    c.expect(got == want, std::string(a) + " -> " + b + " gave " + std::string(to_string(got)));
  }
  c.note(std::to_string(table.size()) + " pairs");
}

TreeNode split(int f, double t, int l, int r) {
  TreeNode n;
  n.feature = f;
  n.threshold = t;
  n.left = l;
  n.right = r;
  return n;
}

TreeNode leaf(std::vector<double> v) {
  TreeNode n;
  n.value = std::move(v);
  return n;
}

void model_inference(Checks& c) {
  // Two stumps over (emb_0, added_lines).
  TreeModel sig;
  sig.task = ModelTask::Significance;
  sig.feature_layout = {"emb_0", "added_lines"};
  sig.base_margin = {0.5};
  sig.metadata = {"acceptance", std::string(kHashedEmbedderId), 1, false};
  sig.trees.push_back({{split(1, 20.0, 1, 2), leaf({-2.0}), leaf({1.0})}});
  sig.trees.push_back({{split(0, 0.0, 1, 2), leaf({0.5}), leaf({-0.25})}});
  const std::vector<std::tuple<std::vector<double>, double>> sig_cases = {
      {{-1.0, 5.0}, 0.5 - 2.0 + 0.5},   // left, left
      {{0.0, 5.0}, 0.5 - 2.0 - 0.25},   // left, right (equal goes right)
      {{0.3, 20.0}, 0.5 + 1.0 - 0.25},  // right, right
      {{-0.3, 99.0}, 0.5 + 1.0 + 0.5}}; // right, left
  for (const auto& [x, margin] : sig_cases) {
    const double want = 1.0 / (1.0 + std::exp(-margin));
    const double got = predict_significance(x, sig);
    c.expect(got == want, "significance margin " + fmt(margin) + " gave " + fmt(got, 17));
  }

  TreeModel cat;
  cat.task = ModelTask::Category;
  cat.feature_layout = {"emb_0", "added_lines"};
  cat.class_labels = {"feat", "fix", "docs"};
  cat.metadata = sig.metadata;
  cat.trees.push_back({{split(0, 0.5, 1, 2), leaf({0.0, 1.5, 0.0}), leaf({2.0, 0.0, 0.0})}});
  cat.trees.push_back({{split(1, 3.0, 1, 2), leaf({0.0, 0.0, 1.0}), leaf({0.0, 0.5, 0.0})}});
  const std::vector<std::tuple<std::vector<double>, std::string, std::vector<double>>> cat_cases = {
      {{0.1, 1.0}, "fix", {0.0, 1.5, 1.0}},
      {{0.9, 1.0}, "feat", {2.0, 0.0, 1.0}},
      {{0.9, 10.0}, "feat", {2.0, 0.5, 0.0}},
      {{0.1, 10.0}, "fix", {0.0, 2.0, 0.0}}};
  for (const auto& [x, label, margins] : cat_cases) {
    const auto p = predict_category(x, cat);
    c.expect(p.label == label, "category label " + p.label + " != " + label);
    double z = 0.0;
    for (double m : margins) z += std::exp(m);
    for (std::size_t k = 0; k < margins.size(); ++k)
      c.expect(near(p.probabilities[k], std::exp(margins[k]) / z, 1e-15), "category probability " + std::to_string(k));
  }

  // Softmax rows of the bundled model on random inputs.
  const auto bundled = load_model(asset_path("models/category.json"));
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x(bundled.feature_layout.size());
    for (auto& v : x) v = g(rng);
    const auto p = predict_category(x, bundled);
    double sum = 0.0;
    for (double v : p.probabilities) sum += v;
    worst = std::max(worst, std::fabs(sum - 1.0));
  }
  c.expect(worst <= kSoftmaxTol, "softmax row sum deviation " + fmt(worst));

  // Invalid model files.
  const auto dir = temp_dir("acceptance-models");
  const auto good = serialize_model(sig);
  auto check_invalid = [&](const std::string& name, std::string text) {
    const auto path = dir / (name + ".json");
    write_text(path, text);
    bool rejected = false;
    try {
      load_model(path);
    } catch (const InvariantViolation&) {
      rejected = true;
    } catch (const std::exception&) {
    }
    c.expect(rejected, name + " model not rejected with InvariantViolation");
  };
  auto cycle = sig;
  cycle.trees[0].nodes[0].left = 0;
  check_invalid("cycle", serialize_model(cycle));
  auto out_of_range = sig;
  out_of_range.trees[1].nodes[0].feature = 5;
  check_invalid("feature-index", serialize_model(out_of_range));
  auto bad_child = sig;
  bad_child.trees[0].nodes[0].right = 17;
  check_invalid("child-index", serialize_model(bad_child));
  auto bad_label = cat;
  bad_label.class_labels[1] = "bugfix";
  check_invalid("label", serialize_model(bad_label));
  c.note("worst softmax deviation " + fmt(worst, 3));
}

ReleaseNoteEntry entry(const std::string& seed, const std::string& summary, double sig, const std::string& cat,
                       std::size_t order) {
  auto e = make_entry(seed, summary, sig, cat);
  e.order = order;
  return e;
}

std::multiset<std::string> shas_of(const std::vector<Section>& sections) {
  std::multiset<std::string> out;
  for (const auto& s : sections)
    for (const auto& e : s.entries)
      for (const auto& m : e.members) out.insert(m.sha);
  return out;
}

void composer_invariants(Checks& c) {
  const auto templates = TemplateLibrary::load_dir(asset_dir() / "prompts");
  MockProvider p;
  const ComposerContext ctx{&p, &templates, {}, nullptr};
  const std::vector<ReleaseNoteEntry> entries = {
      entry("a", "Added German translation", 0.3, "feat", 0),
      entry("b", "Added German translation strings", 0.5, "feat", 1),
      entry("c", "Added Korean translation", 0.4, "feat", 2),
      entry("d", "Added Korean translation strings", 0.2, "feat", 3),
      entry("e", "Fixed crash in the parser", 0.6, "fix", 4),
      entry("f", "Fixed crash in the parser on empty input", 0.1, "fix", 5),
      entry("g", "Documented the flags", 0.05, "docs", 6)};

  const auto organised = organise(entries, Structure::ChangeType);
  const auto merged = merge_related(organised, Structure::ChangeType, ctx);
  c.expect(shas_of(merged) == shas_of(organised), "merge keeps the union of member shas");
  std::size_t merged_count = 0;
  for (const auto& s : merged) merged_count += s.entries.size();
  c.expect(merged_count < entries.size(), "similar entries were merged");
  c.note("merge " + std::to_string(entries.size()) + "->" + std::to_string(merged_count));

  const auto before = p.call_count();
  const auto priority = organise(entries, Structure::ChangePriority);
  const auto priority_merged = merge_related(priority, Structure::ChangePriority, ctx);
  c.expect(priority_merged[0].entries.size() == entries.size() && p.call_count() == before,
           "ChangePriority skips merging");

  std::vector<Section> sections;
  for (const auto& h : section_priority()) sections.push_back({h, {}});
  sections.push_back({"Other Changes", {}});
  sections.push_back({"Styling", {}});
  std::mt19937 rng(5);
  for (int round = 0; round < 50; ++round) {
    std::shuffle(sections.begin(), sections.end(), rng);
    const auto once = reorder_sections(sections);
    const auto twice = reorder_sections(once);
    std::vector<std::string> h1, h2, in;
    for (const auto& s : once) h1.push_back(s.heading);
    for (const auto& s : twice) h2.push_back(s.heading);
    for (const auto& s : sections) in.push_back(s.heading);
    c.expect(h1 == h2, "reorder is idempotent");
    auto sorted_in = in, sorted_out = h1;
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    c.expect(sorted_in == sorted_out, "reorder is a permutation");
    // Known headings follow the table; unknown ones sit between Tests and Build System.
    std::vector<std::string> known;
    for (const auto& h : h1)
      if (std::find(section_priority().begin(), section_priority().end(), h) != section_priority().end())
        known.push_back(h);
    c.expect(known == section_priority(), "reorder follows the priority table");
    const auto pos = [&](const std::string& h) { return std::find(h1.begin(), h1.end(), h) - h1.begin(); };
    c.expect(pos("Tests") < pos("Other Changes") && pos("Other Changes") < pos("Build System") &&
                 pos("Tests") < pos("Styling") && pos("Styling") < pos("Build System"),
             "unknown headings sit between Tests and Build System");
  }

  for (double mst : {0.7, 0.95, 1.0}) {
    const auto r = personalise(organise(entries, Structure::ChangeType), mst, Structure::ChangeType, {}, ctx);
    std::size_t kept = 0;
    for (const auto& s : r.sections) kept += s.entries.size();
    c.expect(r.guarded && kept == 1 && r.sections[0].entries[0].summary == "Fixed crash in the parser",
             "guard at mst " + fmt(mst) + " keeps exactly the most significant entry");
  }
}

std::string headings_of(const std::string& md) {
  std::string out;
  std::istringstream in(md);
  std::string line;
  while (std::getline(in, line))
    if (line.starts_with("## ")) out += line.substr(3) + "|";
  return out;
}

void ablation_flags(Checks& c) {
  const auto standard = run_cli(sample_args());
  const auto raw = run_cli(with(sample_args(), {"--raw-llm"}));
  const auto flat = run_cli(with(sample_args(), {"--no-composer"}));
  const auto rnd1 = run_cli(with(sample_args(), {"--random-context", "--seed", "3"}));
  const auto rnd2 = run_cli(with(sample_args(), {"--random-context", "--seed", "3"}));
  for (const auto* r : {&standard, &raw, &flat, &rnd1, &rnd2})
    c.expect(r->exit_code == 0, "ablation run exit " + std::to_string(r->exit_code) + ": " + r->err);

  c.expect(!headings_of(standard.out).empty(), "standard note has category headings");
  c.expect(headings_of(flat.out).empty() && success(flat.out), "no-composer note has bullets and no headings");
  c.expect(headings_of(raw.out).empty() && raw.out.find("\"mode\":\"raw-llm\"") != std::string::npos,
           "raw-llm note is the direct model output");
  c.expect(standard.out != raw.out && standard.out != flat.out && raw.out != flat.out && standard.out != rnd1.out,
           "ablation outputs differ from each other");
  c.expect(rnd1.out == rnd2.out, "random-context is reproducible for a fixed seed");

  static const std::regex domain_re(R"re("domain":\{"source":"[a-z]+","value":"([A-Za-z]+)"\})re");
  std::smatch m;
  const bool found = std::regex_search(rnd1.out, m, domain_re);
  c.expect(found && m[1].str() == to_string(random_domain(3)), "random-context domain matches the seeded choice");
  if (found) c.note("seed 3 domain " + m[1].str());
  c.expect(rnd1.out.find("\"domain_method\":\"random\"") != std::string::npos, "random-context is recorded");
}

void parity_bridge(Checks& c) {
  const auto fixture = ParityFixture::load(source_path("fixtures/parity/parity_fixture.json"));
  const auto report = replay_parity(fixture, kParityTol);
  c.expect(report.category_records == 50 && report.significance_records == 50, "50 + 50 parity records");
  c.expect(report.within(kParityTol), "max deviation " + fmt(report.max_deviation()));
  c.expect(report.label_mismatches == 0, std::to_string(report.label_mismatches) + " label mismatches");
  c.note("category " + fmt(report.max_category_deviation, 3) + ", significance " +
         fmt(report.max_significance_deviation, 3));
}

struct Criterion {
  const char* name;
  std::function<void(Checks&)> run;
  double budget_ms;  // 0: no runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"metric-oracles", metric_oracles, 1000},
      {"determinism-no-network", determinism, 10000},
      {"self-coverage", self_coverage, 30000},
      {"mst-monotonicity", mst_monotonicity, 0},
      {"semver-table", semver_table, 0},
      {"model-inference", model_inference, 0},
      {"composer-invariants", composer_invariants, 0},
      {"ablation-flags", ablation_flags, 0},
      {"parity-bridge", parity_bridge, 0},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    const auto t0 = Clock::now();
    try {
      cr.run(checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("threw: ") + e.what());
    }
    const double total = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    const double measured = checks.measured_ms >= 0 ? checks.measured_ms : total;
    if (cr.budget_ms > 0 && measured > cr.budget_ms)
      checks.expect(false, "took " + fmt(measured, 4) + " ms, budget " + fmt(cr.budget_ms, 6) + " ms");
    const bool ok = checks.ok();
    failures += ok ? 0 : 1;

    std::string detail = std::to_string(checks.count()) + " checks";
    for (const auto& n : checks.notes()) detail += "; " + n;
    for (std::size_t i = 0; i < checks.failed().size() && i < 3; ++i) detail += "; FAILED: " + checks.failed()[i];
    if (checks.failed().size() > 3) detail += "; +" + std::to_string(checks.failed().size() - 3) + " more";
    std::printf("%s %-24s %8.1f ms  %s\n", ok ? "PASS" : "FAIL", cr.name, measured, detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
