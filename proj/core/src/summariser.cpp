#include "smartnote/summariser.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "smartnote/conventional_commit.hpp"
#include "smartnote/diagnostics.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/parallel.hpp"
#include "smartnote/text.hpp"

namespace smartnote {

std::vector<std::string> ReleaseNoteEntry::member_shas() const {
  std::vector<std::string> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.sha);
  return out;
}

bool is_dependency_update(std::string_view message) {
  const auto title = text::title_of(message);
  if (const auto h = parse_conventional(title); h && text::to_lower(h->scope) == "deps") return true;
  static const std::regex bump(R"(^(chore|build|fix)?(\([^)]*\))?:?\s*(bump|update)\s+(dependency\s+)?\S+\s+(from\s+\S+\s+)?to\s+v?[0-9])",
                               std::regex::icase);
  static const std::regex dep_word(R"(^(update|upgrade|bump)\s+(dependency|dependencies|deps)\b)", std::regex::icase);
  return std::regex_search(title, bump) || std::regex_search(title, dep_word);
}

bool is_breaking_change(std::string_view message) {
  if (const auto h = parse_conventional(message); h && h->breaking) return true;
  for (auto line : text::split_lines(message)) {
    if (line.starts_with("BREAKING CHANGE:") || line.starts_with("BREAKING-CHANGE:")) return true;
  }
  return false;
}

std::vector<Changeset> pack_changesets(const std::vector<CommitAnalysis>& analyses,
                                       const std::vector<Commit>& commits, bool group, std::size_t diff_budget,
                                       Diagnostics* diag) {
  if (analyses.size() != commits.size())
    throw InvariantViolation("pack_changesets: " + std::to_string(analyses.size()) + " analyses for " +
                             std::to_string(commits.size()) + " commits");
  for (std::size_t i = 0; i < commits.size(); ++i)
    if (analyses[i].sha != commits[i].sha)
      throw InvariantViolation("pack_changesets: analysis " + std::to_string(i) + " is not aligned by sha");

  // Buckets of commit indices, keyed by first index for stable order.
  std::vector<std::vector<std::size_t>> buckets;
  std::map<int, std::size_t> by_pr;
  for (std::size_t i = 0; i < commits.size(); ++i) {
    const auto& pr = commits[i].pr_number;
    if (group && pr) {
      const auto [it, inserted] = by_pr.emplace(*pr, buckets.size());
      if (inserted) buckets.emplace_back();
      buckets[it->second].push_back(i);
    } else {
      buckets.push_back({i});
    }
  }

  std::vector<Changeset> out;
  out.reserve(buckets.size());
  for (const auto& idx : buckets) {
    Changeset cs;
    cs.order = idx.front();
    // The most significant member defines the changeset; earlier wins ties.
    std::size_t lead = idx.front();
    for (auto i : idx)
      if (analyses[i].significance > analyses[lead].significance) lead = i;
    // Prefer a non-merge commit for title and author when one exists.
    std::size_t title_src = lead;
    if (commits[lead].is_merge()) {
      for (auto i : idx)
        if (!commits[i].is_merge()) {
          title_src = i;
          break;
        }
    }
    cs.title = text::title_of(commits[title_src].message);
    cs.author = commits[title_src].author;
    cs.datetime = commits[idx.back()].timestamp;
    cs.significance = analyses[lead].significance;

    std::map<std::string, std::size_t> votes;
    for (auto i : idx) ++votes[analyses[i].category];
    std::size_t top = 0;
    for (const auto& [_, n] : votes) top = std::max(top, n);
    cs.change_type = analyses[lead].category;
    if (votes[cs.change_type] != top) {
      // Modal category; among several modes the order of first appearance decides.
      for (auto i : idx)
        if (votes[analyses[i].category] == top) {
          cs.change_type = analyses[i].category;
          break;
        }
    }

    const bool has_plain = std::any_of(idx.begin(), idx.end(), [&](auto i) { return !commits[i].is_merge(); });
    std::vector<std::string> messages;
    std::vector<FilePatch> patches;
    std::set<std::string> seen_paths;
    for (auto i : idx) {
      const auto& c = commits[i];
      cs.members.push_back({c.sha, c.pr_number});
      if (!c.is_merge() || !has_plain) messages.emplace_back(text::trim(c.message));
      for (const auto& p : c.patches) {
        patches.push_back(p);
        if (seen_paths.insert(p.path).second) cs.paths.push_back(p.path);
      }
      cs.breaking = cs.breaking || is_breaking_change(c.message);
    }
    cs.message = text::join(messages, "\n\n");
    cs.dependency = is_dependency_update(cs.title);
    if (group && commits[idx.front()].pr_number) cs.pr_number = commits[idx.front()].pr_number;
    if (!group) cs.pr_number = commits[idx.front()].pr_number;
    cs.patches = budget_diff(commits[idx.front()].sha, patches, diff_budget, diag).text;
    out.push_back(std::move(cs));
  }
  return out;
}

std::string cap_words(std::string_view s, std::size_t max_words) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // word [begin, end)
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    const auto b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    spans.emplace_back(b, i);
  }
  if (spans.size() <= max_words) return std::string(s);
  std::size_t cut = 0;
  for (std::size_t w = 0; w < max_words; ++w) {
    const char last = s[spans[w].second - 1];
    if (last == '.' || last == '!' || last == '?') cut = spans[w].second;
  }
  if (cut > 0) return std::string(s.substr(0, cut));
  std::string out(s.substr(0, spans[max_words - 1].second));
  while (!out.empty() && (out.back() == ',' || out.back() == ';' || out.back() == ':')) out.pop_back();
  out += '.';
  return out;
}

std::string style_instruction(WritingStyle style) {
  switch (style) {
    case WritingStyle::Expository: return "Restate the commit message as written.";
    case WritingStyle::Descriptive:
      return "Describe what changed and how, in plain technical terms, for developers who use the project.";
    case WritingStyle::Persuasive:
      return "Explain the benefit of the change for the people using the project, in plain language.";
  }
  return "";
}

ReleaseNoteEntry summarise_changeset(const Changeset& cs, WritingStyle style, const SummariserContext& ctx) {
  ReleaseNoteEntry e;
  e.members = cs.members;
  e.pr_number = cs.pr_number;
  e.author = cs.author;
  e.date = cs.datetime;
  e.significance = cs.significance;
  e.category = cs.change_type;
  e.paths = cs.paths;
  e.breaking = cs.breaking;
  e.dependency = cs.dependency;
  e.order = cs.order;
  const auto& sha = cs.members.front().sha;

  std::string summary;
  if (style == WritingStyle::Expository) {
    summary = cs.title;
  } else {
    if (!ctx.provider || !ctx.templates) throw Error("summarise_changeset needs a provider and templates");
    const auto& tmpl = ctx.templates->get("summarise_changeset");
    const auto prompt = render_prompt(tmpl, {{"style", style_instruction(style)},
                                             {"message", cs.message},
                                             {"patch", cs.patches},
                                             {"max_words", std::to_string(kMaxSummaryWords)}});
    try {
      summary = ctx.provider->complete({tmpl.id, prompt, tmpl.max_output_tokens}, ctx.params);
    } catch (const ProviderError& err) {
      throw err.with_context("changeset " + sha);
    }
    summary = std::string(text::trim(summary));
    // Collapse to a single line; bullets cannot hold paragraphs.
    std::string flat;
    bool space = false;
    for (char c : summary) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        space = !flat.empty();
      } else {
        if (space) flat += ' ';
        space = false;
        flat += c;
      }
    }
    summary = std::move(flat);
    const auto capped = cap_words(summary);
    if (capped != summary && ctx.diag)
      ctx.diag->warn("cap:" + sha, "summary for " + sha.substr(0, 7) + " exceeded " +
                                       std::to_string(kMaxSummaryWords) + " words and was shortened");
    summary = capped;
  }
  if (text::trim(summary).empty()) summary = cs.title.empty() ? "Updated " + sha.substr(0, 7) : cs.title;
  e.summary = std::move(summary);
  return e;
}

std::vector<ReleaseNoteEntry> summarise_all(const std::vector<Changeset>& changesets, WritingStyle style,
                                            const SummariserContext& ctx, std::size_t parallelism) {
  return parallel_map(changesets.size(), style == WritingStyle::Expository ? 1 : parallelism,
                      [&](std::size_t i) { return summarise_changeset(changesets[i], style, ctx); });
}

}  // namespace smartnote
