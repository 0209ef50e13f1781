#include "smartnote/composer.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "smartnote/assets.hpp"
#include "smartnote/diagnostics.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/text.hpp"

namespace smartnote {
namespace {

using json = nlohmann::json;

constexpr std::pair<std::string_view, std::string_view> kHeadings[] = {
    {"feat", "Features"},
    {"fix", "Bug Fixes"},
    {"docs", "Documentation"},
    {"style", "Styling"},
    {"refactor", "Refactoring"},
    {"perf", "Performance"},
    {"test", "Tests"},
    {"build", "Build System"},
    {"ci", "Continuous Integration"},
    {"chore", "Chores"},
    {"revert", "Reverts"},
};

const std::set<std::string>& ignored_words() {
  static const std::set<std::string> words = {
      // stopwords
      "a", "an", "the", "and", "or", "of", "to", "in", "on", "for", "with", "by", "from", "at", "as", "is",
      "are", "was", "be", "it", "its", "this", "that", "into", "when", "now", "some", "more", "all", "not",
      "no", "so", "if", "via", "also", "new",
      // generic change verbs
      "add", "adds", "added", "adding", "fix", "fixes", "fixed", "fixing", "update", "updates", "updated",
      "updating", "improve", "improves", "improved", "improving", "change", "changes", "changed", "remove",
      "removes", "removed", "removing", "support", "supports", "use", "uses", "used", "make", "makes",
      "made", "bump", "bumps", "bumped", "minor", "small", "various",
      // conventional prefixes
      "feat", "docs", "style", "refactor", "perf", "test", "build", "ci", "chore", "revert"};
  return words;
}

bool all_digits(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string top_level_dir(const std::vector<std::string>& paths) {
  if (paths.empty()) return "other";
  std::map<std::string, std::size_t> counts;
  std::vector<std::string> order;
  for (const auto& p : paths) {
    const auto slash = p.find('/');
    auto key = slash == std::string::npos ? std::string("root") : p.substr(0, slash);
    if (counts[key]++ == 0) order.push_back(key);
  }
  std::string best = order.front();
  for (const auto& k : order)
    if (counts[k] > counts[best]) best = k;
  return best;
}

std::string heading_for(const ReleaseNoteEntry& e) {
  if (e.breaking) return std::string(kBreakingHeading);
  if (e.dependency) return std::string(kDependenciesHeading);
  return std::string(category_heading(e.category));
}

// Folds `group` (by index into entries, ascending) into one entry.
ReleaseNoteEntry combine(const std::vector<ReleaseNoteEntry>& entries, const std::vector<std::size_t>& group,
                         std::string summary) {
  ReleaseNoteEntry out = entries[group.front()];
  out.summary = std::move(summary);
  std::set<std::string> paths(out.paths.begin(), out.paths.end());
  for (std::size_t g = 1; g < group.size(); ++g) {
    const auto& e = entries[group[g]];
    for (const auto& m : e.members)
      if (std::find(out.members.begin(), out.members.end(), m) == out.members.end()) out.members.push_back(m);
    for (const auto& p : e.paths)
      if (paths.insert(p).second) out.paths.push_back(p);
    if (e.significance > out.significance) {
      out.significance = e.significance;
      out.category = e.category;
    }
    out.breaking = out.breaking || e.breaking;
    out.dependency = out.dependency && e.dependency;
    out.order = std::min(out.order, e.order);
    out.date = std::max(out.date, e.date);
    if (out.pr_number != e.pr_number) out.pr_number.reset();
  }
  return out;
}

std::string entries_block(const std::vector<ReleaseNoteEntry>& entries, const std::vector<std::size_t>& group) {
  std::string block;
  for (auto i : group) block += "<entry>" + entries[i].summary + "</entry>\n";
  return block;
}

std::string single_line(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : text::trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
    } else {
      if (space) out += ' ';
      space = false;
      out += c;
    }
  }
  return out;
}

bool mentions_pr(std::string_view s, int pr) {
  const std::string needle = "#" + std::to_string(pr);
  for (auto pos = s.find(needle); pos != std::string_view::npos; pos = s.find(needle, pos + 1)) {
    const auto end = pos + needle.size();
    if (end < s.size() && s[end] >= '0' && s[end] <= '9') continue;
    if (pos > 0 && text::is_identifier_byte(static_cast<unsigned char>(s[pos - 1]))) continue;
    return true;
  }
  return false;
}

}  // namespace

std::string_view category_heading(std::string_view label) {
  for (const auto& [k, v] : kHeadings)
    if (k == label) return v;
  return "Other Changes";
}

const std::vector<std::string>& section_priority() {
  static const std::vector<std::string> order = {
      "Breaking Changes", "Features",      "Bug Fixes",    "Performance", "Refactoring",
      "Tests",            "Build System",  "Continuous Integration", "Documentation",
      "Dependencies",     "Chores",        "Version"};
  return order;
}

std::vector<Section> organise(const std::vector<ReleaseNoteEntry>& input, Structure structure) {
  if (input.empty()) throw NoEntries();
  auto entries = input;
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.order < b.order; });

  if (structure == Structure::ChangePriority) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.significance > b.significance; });
    return {Section{std::string(kPriorityHeading), std::move(entries)}};
  }
  std::vector<Section> sections;
  std::map<std::string, std::size_t> index;
  for (auto& e : entries) {
    const auto key = structure == Structure::ChangeType ? heading_for(e) : top_level_dir(e.paths);
    const auto [it, inserted] = index.emplace(key, sections.size());
    if (inserted) sections.push_back({key, {}});
    sections[it->second].entries.push_back(std::move(e));
  }
  return sections;
}

std::set<std::string> content_words(std::string_view summary) {
  std::set<std::string> out;
  for (auto& w : text::words(summary)) {
    if (ignored_words().contains(w) || all_digits(w)) continue;
    // Short shas in attributions are not content.
    if (w.size() >= 7 && std::all_of(w.begin(), w.end(), [](char c) {
          return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
        }))
      continue;
    out.insert(std::move(w));
  }
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& w : a) inter += b.contains(w);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

std::vector<Section> merge_related(std::vector<Section> sections, Structure structure, const ComposerContext& ctx) {
  if (structure == Structure::ChangePriority) return sections;
  for (auto& section : sections) {
    auto& entries = section.entries;
    const std::size_t n = entries.size();
    if (n < 2) continue;
    std::vector<std::set<std::string>> words;
    words.reserve(n);
    for (const auto& e : entries) words.push_back(content_words(e.summary));
    // Union-find for single-linkage clusters.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (jaccard(words[i], words[j]) >= kMergeSimilarity) {
          const auto a = find(i), b = find(j);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<std::size_t, std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < n; ++i) clusters[find(i)].push_back(i);
    if (clusters.size() == n) continue;

    std::vector<ReleaseNoteEntry> merged;
    try {
      for (const auto& [root, group] : clusters) {
        if (group.size() == 1) {
          merged.push_back(entries[group.front()]);
          continue;
        }
        if (!ctx.provider || !ctx.templates) throw ProviderError(0, "no provider for merging");
        const auto& tmpl = ctx.templates->get("merge_entries");
        const auto prompt = render_prompt(tmpl, {{"heading", section.heading}, {"entries", entries_block(entries, group)}});
        auto summary = single_line(ctx.provider->complete({tmpl.id, prompt, tmpl.max_output_tokens}, ctx.params));
        if (summary.empty()) throw ProviderError(0, "empty merge response");
        merged.push_back(combine(entries, group, std::move(summary)));
      }
    } catch (const Error& e) {
      if (ctx.diag) ctx.diag->warn("merge:" + section.heading, "could not merge entries in '" + section.heading + "': " + e.what());
      continue;
    }
    std::stable_sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.order < b.order; });
    entries = std::move(merged);
  }
  return sections;
}

std::vector<Section> update_entity_mentions(std::vector<Section> sections, const RenameMap& renames) {
  if (renames.empty()) return sections;
  for (auto& s : sections)
    for (auto& e : s.entries)
      for (const auto& [from, to] : renames) {
        // "Renamed a to b" already names both; rewriting would lose the old name.
        if (text::contains_identifier(e.summary, to)) continue;
        e.summary = text::replace_identifier(e.summary, from, to);
      }
  return sections;
}

DomainProfiles parse_domain_profiles(std::string_view json_text) {
  const auto doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ParseError("domain profiles: expected a JSON object");
  DomainProfiles out;
  for (const auto& [key, value] : doc.items()) {
    const auto domain = parse_project_domain(key);
    if (!domain) throw ParseError("domain profiles: unknown domain '" + key + "'");
    DomainProfile p;
    if (value.contains("condense")) {
      for (const auto& h : value["condense"]) {
        if (!h.is_string()) throw ParseError("domain profiles: headings must be strings");
        p.condense.push_back(h.get<std::string>());
      }
    }
    if (value.contains("condense_min_entries")) {
      if (!value["condense_min_entries"].is_number_unsigned() || value["condense_min_entries"].get<std::size_t>() < 2)
        throw ParseError("domain profiles: condense_min_entries must be an integer >= 2");
      p.condense_min_entries = value["condense_min_entries"].get<std::size_t>();
    }
    out[*domain] = std::move(p);
  }
  return out;
}

DomainProfiles load_domain_profiles(const std::filesystem::path& path) { return parse_domain_profiles(read_file(path)); }

const DomainProfiles& default_domain_profiles() {
  static const DomainProfiles profiles = load_domain_profiles(asset_path("domain_profiles.json"));
  return profiles;
}

PersonaliseResult personalise(std::vector<Section> sections, double mst, Structure structure,
                              const DomainProfile& profile, const ComposerContext& ctx) {
  PersonaliseResult r;
  const ReleaseNoteEntry* best = nullptr;
  std::string best_heading;
  for (const auto& s : sections)
    for (const auto& e : s.entries)
      if (!best || e.significance > best->significance ||
          (e.significance == best->significance && e.order < best->order)) {
        best = &e;
        best_heading = s.heading;
      }
  if (!best) return r;
  const ReleaseNoteEntry keep = *best;

  std::vector<Section> kept;
  for (auto& s : sections) {
    Section out{s.heading, {}};
    for (auto& e : s.entries) {
      if (e.significance < mst) {
        ++r.dropped;
      } else {
        out.entries.push_back(std::move(e));
      }
    }
    if (!out.entries.empty()) kept.push_back(std::move(out));
  }
  if (kept.empty()) {
    kept.push_back({best_heading, {keep}});
    --r.dropped;
    r.guarded = true;
    if (ctx.diag) {
      std::ostringstream msg;
      msg << "every entry fell below the significance threshold " << mst << "; kept the most significant one";
      ctx.diag->warn("guard", msg.str());
    }
  }

  if (structure == Structure::ChangeType) {
    for (auto& s : kept) {
      const bool listed = std::find(profile.condense.begin(), profile.condense.end(), s.heading) != profile.condense.end();
      if (!listed || s.entries.size() < profile.condense_min_entries) continue;
      try {
        if (!ctx.provider || !ctx.templates) throw ProviderError(0, "no provider for condensing");
        const auto& tmpl = ctx.templates->get("condense_section");
        std::vector<std::size_t> all(s.entries.size());
        std::iota(all.begin(), all.end(), 0);
        const auto prompt = render_prompt(tmpl, {{"heading", s.heading}, {"entries", entries_block(s.entries, all)}});
        auto summary = single_line(ctx.provider->complete({tmpl.id, prompt, tmpl.max_output_tokens}, ctx.params));
        if (summary.empty()) throw ProviderError(0, "empty condense response");
        s.entries = {combine(s.entries, all, std::move(summary))};
      } catch (const Error& e) {
        if (ctx.diag) ctx.diag->warn("condense:" + s.heading, "could not condense '" + s.heading + "': " + e.what());
      }
    }
  }
  r.sections = std::move(kept);
  return r;
}

std::vector<Section> reorder_sections(std::vector<Section> sections) {
  const auto& order = section_priority();
  const auto unknown_rank = static_cast<std::size_t>(
      std::find(order.begin(), order.end(), "Build System") - order.begin());
  auto rank = [&](const std::string& h) -> double {
    const auto it = std::find(order.begin(), order.end(), h);
    if (it == order.end()) return static_cast<double>(unknown_rank) - 0.5;
    return static_cast<double>(it - order.begin());
  };
  std::stable_sort(sections.begin(), sections.end(),
                   [&](const Section& a, const Section& b) { return rank(a.heading) < rank(b.heading); });
  return sections;
}

std::vector<Section> reorder_sections_llm(std::vector<Section> sections, const ComposerContext& ctx) {
  sections = reorder_sections(std::move(sections));
  if (sections.size() < 2 || !ctx.provider || !ctx.templates) return sections;
  std::string headings;
  for (const auto& s : sections) headings += s.heading + "\n";
  try {
    const auto& tmpl = ctx.templates->get("reorder_sections");
    const auto prompt = render_prompt(tmpl, {{"headings", headings}});
    const auto raw = ctx.provider->complete({tmpl.id, prompt, tmpl.max_output_tokens}, ctx.params);
    std::vector<Section> out;
    std::vector<char> used(sections.size(), 0);
    for (auto line : text::split_lines(raw)) {
      line = text::trim(line);
      while (!line.empty() && (line.front() == '-' || line.front() == '*' || line.front() == '#' || line.front() == ' '))
        line.remove_prefix(1);
      if (line.empty()) continue;
      for (std::size_t i = 0; i < sections.size(); ++i)
        if (!used[i] && sections[i].heading == line) {
          used[i] = 1;
          out.push_back(sections[i]);
          break;
        }
    }
    if (out.size() == sections.size()) return out;
    if (ctx.diag) ctx.diag->warn("reorder", "LLM section order was not a permutation of the headings; kept the table order");
  } catch (const Error& e) {
    if (ctx.diag) ctx.diag->warn("reorder", std::string("LLM reorder failed: ") + e.what());
  }
  return sections;
}

std::vector<std::string> attribution(const ReleaseNoteEntry& entry) {
  std::vector<std::string> refs;
  std::set<int> prs;
  for (const auto& m : entry.members)
    if (m.pr) prs.insert(*m.pr);
  if (entry.pr_number) prs.insert(*entry.pr_number);
  for (int pr : prs)
    if (!mentions_pr(entry.summary, pr)) refs.push_back("#" + std::to_string(pr));
  for (const auto& m : entry.members) {
    if (m.pr) continue;
    const auto short_sha = m.sha.substr(0, 7);
    if (entry.summary.find(short_sha) == std::string::npos) refs.push_back(short_sha);
  }
  return refs;
}

std::string render_markdown(const ReleaseNote& note) {
  std::string out;
  if (!note.title.empty()) out += "# " + note.title + "\n\n";
  auto bullet = [&](const ReleaseNoteEntry& e) {
    out += "- " + single_line(e.summary);
    const auto refs = attribution(e);
    if (!refs.empty()) out += " (" + text::join(refs, ", ") + ")";
    out += '\n';
  };
  bool first = true;
  for (const auto& s : note.sections) {
    if (note.headings) {
      if (!first) out += '\n';
      out += "## " + s.heading + "\n";
    }
    first = false;
    for (const auto& e : s.entries) bullet(e);
  }

  json meta = json::object();
  json settings = json::object();
  for (const auto& r : note.metadata.settings) settings[r.key] = {{"value", r.value}, {"source", r.source}};
  meta["settings"] = std::move(settings);
  meta["generated_at"] = note.metadata.generated_at;
  meta["warnings"] = note.metadata.warnings;
  meta["dropped_entries"] = note.metadata.dropped_entries;
  for (const auto& [k, v] : note.metadata.extra) meta[k] = v;
  std::string payload = meta.dump();
  // "--" may not appear inside an HTML comment.
  for (auto pos = payload.find("--"); pos != std::string::npos; pos = payload.find("--", pos))
    payload.replace(pos + 1, 1, "\\u002d");
  if (!out.empty()) out += '\n';
  out += "<!-- smartnote: " + payload + " -->\n";
  return out;
}

}  // namespace smartnote
