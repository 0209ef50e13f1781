#include "smartnote/repo_miner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include "smartnote/errors.hpp"
#include "smartnote/languages.hpp"
#include "smartnote/process.hpp"
#include "smartnote/semver.hpp"
#include "smartnote/text.hpp"

namespace smartnote {
namespace {

constexpr char kRecordSep = '\x1e';
constexpr char kFieldSep = '\x1f';
constexpr int kHeaderFields = 7;

std::vector<std::string> git_argv(const std::filesystem::path& repo) {
  return {"git",        "-C",      repo.string(), "-c", "core.quotepath=false", "-c",
          "color.ui=never", "-c", "log.showRoot=true", "-c", "log.showSignature=false"};
}

ProcessResult git(const std::filesystem::path& repo, std::vector<std::string> args) {
  auto argv = git_argv(repo);
  argv.insert(argv.end(), std::make_move_iterator(args.begin()), std::make_move_iterator(args.end()));
  return run_process(argv);
}

std::string git_checked(const std::filesystem::path& repo, std::vector<std::string> args) {
  const std::string what = args.empty() ? std::string("git") : "git " + args.front();
  auto r = git(repo, std::move(args));
  if (r.exit_code != 0) throw GitError(what + " failed: " + std::string(text::trim(r.err)));
  return r.out;
}

void ensure_repository(const std::filesystem::path& repo) {
  std::error_code ec;
  if (!std::filesystem::is_directory(repo, ec)) throw NotARepository(repo.string());
  const auto r = git(repo, {"rev-parse", "--git-dir"});
  if (r.exit_code != 0) throw NotARepository(repo.string());
}

std::optional<int> parse_positive(std::string_view digits) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || v <= 0) return std::nullopt;
  return v;
}

std::string strip_path_prefix(std::string_view p) {
  p = text::trim(p);
  if (p.size() >= 2 && p.front() == '"' && p.back() == '"') p = p.substr(1, p.size() - 2);
  if (p.starts_with("a/") || p.starts_with("b/")) p.remove_prefix(2);
  return std::string(p);
}

std::string extension_of(std::string_view path) {
  const auto slash = path.find_last_of('/');
  const auto name = slash == std::string_view::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot == std::string_view::npos || dot == 0) return {};
  return text::to_lower(name.substr(dot + 1));
}

std::string stem_of(std::string_view path) {
  const auto slash = path.find_last_of('/');
  auto name = slash == std::string_view::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string_view::npos && dot > 0) name = name.substr(0, dot);
  return std::string(name);
}

FilePatch parse_one_patch(std::string_view section) {
  FilePatch p;
  p.diff_text = std::string(section);
  std::string header_a, header_b, minus_path, plus_path, rename_from, rename_to;
  bool in_hunk = false;
  for (auto line : text::split_lines(section)) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!in_hunk) {
      if (line.starts_with("diff --git ")) {
        const auto rest = line.substr(11);
        const auto b = rest.rfind(" b/");
        if (b != std::string_view::npos) {
          header_a = strip_path_prefix(rest.substr(0, b));
          header_b = strip_path_prefix(rest.substr(b + 1));
        }
      } else if (line.starts_with("--- ")) {
        const auto v = line.substr(4);
        if (v != "/dev/null") minus_path = strip_path_prefix(v);
      } else if (line.starts_with("+++ ")) {
        const auto v = line.substr(4);
        if (v != "/dev/null") plus_path = strip_path_prefix(v);
      } else if (line.starts_with("rename from ")) {
        rename_from = std::string(line.substr(12));
      } else if (line.starts_with("rename to ")) {
        rename_to = std::string(line.substr(10));
      } else if (line.starts_with("@@")) {
        in_hunk = true;
      }
      continue;
    }
    if (line.starts_with("@@")) continue;
    if (!line.empty() && line[0] == '+') ++p.added_lines;
    if (!line.empty() && line[0] == '-') ++p.deleted_lines;
  }
  if (!plus_path.empty()) {
    p.path = plus_path;
  } else if (!rename_to.empty()) {
    p.path = rename_to;
  } else if (!minus_path.empty()) {
    p.path = minus_path;
  } else {
    p.path = header_b.empty() ? header_a : header_b;
  }
  if (!rename_from.empty()) {
    p.old_path = rename_from;
  } else if (!minus_path.empty()) {
    p.old_path = minus_path;
  } else {
    p.old_path = header_a.empty() ? p.path : header_a;
  }
  p.extension = extension_of(p.path);
  p.language = language_for_path(p.path);
  return p;
}

// Tokenises a code line into identifiers and single non-space characters.
struct CodeToken {
  std::string text;
  bool identifier;
};

std::vector<CodeToken> code_tokens(std::string_view line) {
  std::vector<CodeToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const auto c = static_cast<unsigned char>(line[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && text::is_identifier_byte(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({std::string(line.substr(i, j - i)), true});
      i = j;
      continue;
    }
    out.push_back({std::string(1, line[i]), false});
    ++i;
  }
  return out;
}

bool plausible_identifier(std::string_view s) {
  static const std::unordered_set<std::string_view> keywords = {
      "const", "let", "var", "function", "return", "class", "struct", "def", "self", "this",
      "true", "false", "null", "None", "void", "int", "auto", "static", "public", "private",
      "import", "export", "from", "async", "await", "new", "delete", "string", "bool", "double"};
  if (s.size() < 3 || keywords.contains(s)) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return text::is_identifier_byte(static_cast<unsigned char>(c)); });
}

// If the two lines differ only by one identifier substitution (possibly
// repeated), returns it.
std::optional<std::pair<std::string, std::string>> single_identifier_swap(std::string_view removed,
                                                                          std::string_view added) {
  const auto a = code_tokens(removed);
  const auto b = code_tokens(added);
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  std::optional<std::pair<std::string, std::string>> swap;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].text == b[i].text) continue;
    if (!a[i].identifier || !b[i].identifier) return std::nullopt;
    std::pair<std::string, std::string> pair{a[i].text, b[i].text};
    if (swap && *swap != pair) return std::nullopt;
    swap = std::move(pair);
  }
  return swap;
}

void collect_line_swaps(const FilePatch& patch, std::vector<std::pair<std::string, std::string>>& out) {
  std::vector<std::string_view> removed, added;
  auto flush = [&] {
    if (!removed.empty() && removed.size() == added.size()) {
      for (std::size_t i = 0; i < removed.size(); ++i) {
        if (auto swap = single_identifier_swap(removed[i], added[i])) out.push_back(std::move(*swap));
      }
    }
    removed.clear();
    added.clear();
  };
  bool in_hunk = false;
  for (auto line : text::split_lines(patch.diff_text)) {
    if (line.starts_with("@@")) {
      flush();
      in_hunk = true;
      continue;
    }
    if (!in_hunk) continue;
    if (line.starts_with("diff --git ")) {
      flush();
      in_hunk = false;
      continue;
    }
    if (!line.empty() && line[0] == '-') {
      if (!added.empty()) flush();
      removed.push_back(line.substr(1));
    } else if (!line.empty() && line[0] == '+') {
      added.push_back(line.substr(1));
    } else {
      flush();
    }
  }
  flush();
}

}  // namespace

bool is_valid_sha(std::string_view sha) noexcept {
  return sha.size() == 40 && std::all_of(sha.begin(), sha.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

std::string resolve_tag(const std::filesystem::path& repo, const std::string& tag) {
  for (const auto& candidate : {"refs/tags/" + tag, tag}) {
    const auto r = git(repo, {"rev-parse", "--verify", "--quiet", candidate + "^{commit}"});
    if (r.exit_code == 0) {
      const auto sha = std::string(text::trim(r.out));
      if (is_valid_sha(sha)) return sha;
    }
  }
  throw TagNotFound(tag);
}

std::vector<FilePatch> parse_patches(std::string_view diff) {
  std::vector<FilePatch> out;
  std::size_t pos = 0;
  std::vector<std::size_t> starts;
  while (pos < diff.size()) {
    if (diff.compare(pos, 11, "diff --git ") == 0) starts.push_back(pos);
    const auto nl = diff.find('\n', pos);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const auto end = i + 1 < starts.size() ? starts[i + 1] : diff.size();
    auto section = diff.substr(starts[i], end - starts[i]);
    // Drop the blank separator git prints before the next record.
    while (section.ends_with("\n\n")) section.remove_suffix(1);
    out.push_back(parse_one_patch(section));
  }
  return out;
}

std::vector<Commit> parse_git_log(std::string_view raw) {
  std::vector<Commit> commits;
  std::size_t pos = raw.find(kRecordSep);
  while (pos != std::string_view::npos) {
    const auto next = raw.find(kRecordSep, pos + 1);
    auto record = raw.substr(pos + 1, next == std::string_view::npos ? raw.npos : next - pos - 1);
    pos = next;

    std::array<std::string_view, kHeaderFields> fields;
    std::size_t start = 0;
    bool ok = true;
    for (int f = 0; f < kHeaderFields; ++f) {
      const auto sep = record.find(kFieldSep, start);
      if (sep == std::string_view::npos) {
        ok = false;
        break;
      }
      fields[f] = record.substr(start, sep - start);
      start = sep + 1;
    }
    if (!ok) throw GitError("unexpected git log output");
    const auto diff = record.substr(start);

    Commit c;
    c.sha = std::string(fields[0]);
    if (!is_valid_sha(c.sha)) throw GitError("unexpected commit id in git log output: " + c.sha);
    for (const auto& w : text::words(fields[1])) c.parents.push_back(w);
    c.author = std::string(fields[2]);
    c.author_email = std::string(fields[3]);
    c.committer = std::string(fields[4]);
    long long secs = 0;
    std::from_chars(fields[5].data(), fields[5].data() + fields[5].size(), secs);
    c.timestamp = Timestamp(std::chrono::seconds(secs));
    auto msg = fields[6];
    while (!msg.empty() && (msg.back() == '\n' || msg.back() == '\r')) msg.remove_suffix(1);
    c.message = std::string(msg);
    c.patches = parse_patches(diff);
    for (const auto& p : c.patches) {
      c.added_lines += p.added_lines;
      c.deleted_lines += p.deleted_lines;
      if (p.language) c.languages.insert(*p.language);
    }
    commits.push_back(std::move(c));
  }
  return commits;
}

std::vector<Commit> resolve_range(const std::filesystem::path& repo, const std::string& from_tag,
                                  const std::string& to_tag) {
  ensure_repository(repo);
  const auto from_sha = resolve_tag(repo, from_tag);
  const auto to_sha = resolve_tag(repo, to_tag);
  if (from_sha == to_sha) throw EmptyRange(from_tag + " and " + to_tag + " point at the same commit");

  const std::string format = "--format=%x1e%H%x1f%P%x1f%an%x1f%ae%x1f%cn%x1f%ct%x1f%B%x1f";
  const auto out = git_checked(repo, {"log", format, "--encoding=UTF-8", "-p", "-M50%", "--no-color",
                                      "--no-ext-diff", "--src-prefix=a/", "--dst-prefix=b/",
                                      "--topo-order", "--reverse", to_sha, "^" + from_sha, "--"});
  auto commits = parse_git_log(out);
  if (commits.empty()) throw EmptyRange(to_tag + " adds no commits over " + from_tag);
  return commits;
}

std::optional<int> parse_pr_suffix(std::string_view title) {
  static const std::regex re(R"(\(#([0-9]{1,9})\)\s*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(title.begin(), title.end(), m, re)) return std::nullopt;
  return parse_positive(std::string_view(&*m[1].first, static_cast<std::size_t>(m[1].length())));
}

std::optional<int> parse_merge_pr_title(std::string_view title) {
  static const std::regex re(R"(^Merge pull request #([0-9]{1,9}) from )");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(title.begin(), title.end(), m, re)) return std::nullopt;
  return parse_positive(std::string_view(&*m[1].first, static_cast<std::size_t>(m[1].length())));
}

std::vector<Commit> detect_pr_links(std::vector<Commit> commits) {
  std::unordered_map<std::string, std::size_t> index;
  std::map<int, int> suffix_uses;
  std::vector<std::optional<int>> suffix(commits.size());
  for (std::size_t i = 0; i < commits.size(); ++i) {
    auto& c = commits[i];
    c.pr_number.reset();
    c.merge_kind = MergeKind::None;
    index.emplace(c.sha, i);
    if (!c.is_merge()) {
      suffix[i] = parse_pr_suffix(text::title_of(c.message));
      if (suffix[i]) ++suffix_uses[*suffix[i]];
    }
  }
  for (std::size_t i = 0; i < commits.size(); ++i) {
    if (!suffix[i]) continue;
    commits[i].pr_number = suffix[i];
    commits[i].merge_kind = suffix_uses[*suffix[i]] > 1 ? MergeKind::Rebase : MergeKind::Squash;
  }

  // Ancestors of `start` restricted to the commits of the list.
  auto ancestors = [&](const std::string& start) {
    std::unordered_set<std::size_t> seen;
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
      auto it = index.find(queue.front());
      queue.pop_front();
      if (it == index.end() || !seen.insert(it->second).second) continue;
      for (const auto& p : commits[it->second].parents) queue.push_back(p);
    }
    return seen;
  };

  for (std::size_t i = 0; i < commits.size(); ++i) {
    auto& merge = commits[i];
    if (!merge.is_merge()) continue;
    const auto pr = parse_merge_pr_title(text::title_of(merge.message));
    if (!pr) continue;
    merge.pr_number = pr;
    merge.merge_kind = MergeKind::MergeCommit;
    const auto mainline = ancestors(merge.parents[0]);
    for (std::size_t j : ancestors(merge.parents[1])) {
      if (mainline.contains(j) || suffix[j] || commits[j].pr_number) continue;
      commits[j].pr_number = pr;
      commits[j].merge_kind = MergeKind::MergeCommit;
    }
  }
  return commits;
}

double history_complexity(const std::vector<Commit>& commits) {
  std::map<std::string, std::uint64_t> per_file;
  std::uint64_t total = 0;
  for (const auto& c : commits) {
    for (const auto& p : c.patches) {
      ++per_file[p.path];
      ++total;
    }
  }
  if (total == 0) return 0.0;
  double h = 0.0;
  for (const auto& [_, n] : per_file) {
    const double p = static_cast<double>(n) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h <= 0.0 ? 0.0 : h;
}

ReleaseContext compute_release_context(const std::vector<Commit>& commits,
                                       std::string_view previous_version,
                                       std::string_view new_version) {
  if (commits.empty()) throw EmptyRange("no commits to describe");
  ReleaseContext ctx;
  ctx.release_type = classify_release_type(previous_version, new_version);
  ctx.commit_count = commits.size();
  std::set<std::string> authors, committers;
  double files = 0.0, churn_sum = 0.0;
  std::size_t churn_commits = 0;
  for (const auto& c : commits) {
    authors.insert(c.author_email.empty() ? c.author : text::to_lower(c.author_email));
    committers.insert(c.committer);
    files += static_cast<double>(c.patches.size());
    if (!c.patches.empty()) {
      double lines = 0.0;
      for (const auto& p : c.patches) lines += static_cast<double>(p.added_lines + p.deleted_lines);
      churn_sum += lines / static_cast<double>(c.patches.size());
      ++churn_commits;
    }
  }
  ctx.author_count = authors.size();
  ctx.committer_count = committers.size();
  ctx.avg_changeset = files / static_cast<double>(commits.size());
  ctx.avg_codechurn = churn_commits ? churn_sum / static_cast<double>(churn_commits) : 0.0;
  ctx.avg_history_complexity = history_complexity(commits);
  return ctx;
}

ProjectContext mine_local_project(const std::filesystem::path& repo, const std::string& from_tag,
                                  const std::string& to_tag) {
  ensure_repository(repo);
  ProjectContext p;
  p.previous_version = from_tag;
  p.new_version = to_tag;
  const auto to_sha = resolve_tag(repo, to_tag);

  const auto origin = git(repo, {"config", "--get", "remote.origin.url"});
  if (origin.exit_code == 0) {
    std::string url(text::trim(origin.out));
    static const std::regex scp(R"(^git@([^:]+):(.+?)(\.git)?$)");
    static const std::regex https(R"(^(?:https?|ssh|git)://(?:[^@/]+@)?([^/]+)/(.+?)(\.git)?/?$)");
    std::smatch m;
    if (std::regex_match(url, m, scp) || std::regex_match(url, m, https))
      p.remote_url = "https://" + m[1].str() + "/" + m[2].str();
  }
  if (!p.remote_url.empty()) {
    p.name = p.remote_url.substr(p.remote_url.find_last_of('/') + 1);
  } else {
    auto top = git(repo, {"rev-parse", "--show-toplevel"});
    p.name = std::filesystem::path(std::string(text::trim(top.out))).filename().string();
  }

  const auto tree = git_checked(repo, {"ls-tree", "--name-only", to_sha});
  std::string readme_name;
  for (auto name : text::split_lines(tree)) {
    const auto lower = text::to_lower(name);
    if (lower == "readme.md") {
      readme_name = std::string(name);
      break;
    }
    if (readme_name.empty() && lower.starts_with("readme")) readme_name = std::string(name);
  }
  if (!readme_name.empty()) {
    const auto r = git(repo, {"show", to_sha + ":" + readme_name});
    if (r.exit_code == 0) p.readme = r.out;
  }

  const auto count = git_checked(repo, {"rev-list", "--count", to_sha});
  p.commit_total = std::stoull(std::string(text::trim(count)));
  const auto emails = git_checked(repo, {"log", "--format=%ae", to_sha});
  std::set<std::string> contributors;
  for (auto e : text::split_lines(emails))
    if (!text::trim(e).empty()) contributors.insert(text::to_lower(text::trim(e)));
  p.contributor_count = contributors.size();
  return p;
}

RenameMap extract_renames(const std::vector<Commit>& commits) {
  // Evidence per commit: file-stem renames count as strong evidence, line
  // swaps need at least two occurrences across the range.
  std::vector<std::pair<std::string, std::string>> ordered;
  std::map<std::pair<std::string, std::string>, int> support;
  for (const auto& c : commits) {
    for (const auto& p : c.patches) {
      if (!p.old_path.empty() && p.old_path != p.path) {
        auto a = stem_of(p.old_path), b = stem_of(p.path);
        if (a != b && plausible_identifier(a) && plausible_identifier(b)) {
          support[{a, b}] += 2;
          ordered.emplace_back(std::move(a), std::move(b));
        }
      }
      std::vector<std::pair<std::string, std::string>> swaps;
      collect_line_swaps(p, swaps);
      for (auto& s : swaps) {
        if (!plausible_identifier(s.first) || !plausible_identifier(s.second)) continue;
        ++support[s];
        ordered.push_back(std::move(s));
      }
    }
  }

  RenameMap final_name;
  std::set<std::pair<std::string, std::string>> applied;
  for (const auto& pair : ordered) {
    if (support[pair] < 2 || !applied.insert(pair).second) continue;
    const auto& [from, to] = pair;
    for (auto& [k, v] : final_name)
      if (v == from) v = to;
    final_name[from] = to;
    // `to` now names a different entity than any earlier rename of `to`.
    if (auto it = final_name.find(to); it != final_name.end() && it->second != to) final_name.erase(it);
  }
  for (auto it = final_name.begin(); it != final_name.end();) {
    it = it->first == it->second ? final_name.erase(it) : std::next(it);
  }
  return final_name;
}

}  // namespace smartnote
