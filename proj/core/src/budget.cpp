#include "smartnote/budget.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "smartnote/diagnostics.hpp"
#include "smartnote/tokens.hpp"

namespace smartnote {
namespace {

std::string concat(std::span<const FilePatch> patches, const std::vector<bool>& keep) {
  std::string out;
  for (std::size_t i = 0; i < patches.size(); ++i) {
    if (!keep[i]) continue;
    if (!out.empty() && out.back() != '\n') out += '\n';
    out += patches[i].diff_text;
  }
  return out;
}

}  // namespace

BudgetedDiff budget_diff(const std::string& key_sha, std::span<const FilePatch> patches,
                         std::size_t max_tokens, Diagnostics* diag) {
  if (max_tokens < kMinDiffBudget)
    throw std::invalid_argument("diff budget must be at least " + std::to_string(kMinDiffBudget) + " tokens");

  std::vector<bool> keep(patches.size(), true);
  BudgetedDiff result;
  result.text = concat(patches, keep);
  result.report.commit_sha = key_sha;
  result.report.original_tokens = count_tokens(result.text);
  result.report.retained_tokens = result.report.original_tokens;
  if (result.report.original_tokens <= max_tokens) return result;

  std::vector<std::size_t> order(patches.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> sizes(patches.size());
  for (std::size_t i = 0; i < patches.size(); ++i) sizes[i] = count_tokens(patches[i].diff_text);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    return a > b;
  });

  for (std::size_t idx : order) {
    keep[idx] = false;
    result.dropped_paths.push_back(patches[idx].path);
    result.text = concat(patches, keep);
    result.report.retained_tokens = count_tokens(result.text);
    if (result.report.retained_tokens <= max_tokens) break;
  }
  result.report.truncated = true;

  if (diag) {
    std::string msg = "diff of " + key_sha.substr(0, 12) + " exceeds the " + std::to_string(max_tokens) +
                      "-token budget (" + std::to_string(result.report.original_tokens) + " tokens); dropped " +
                      std::to_string(result.dropped_paths.size()) + " file(s)";
    diag->warn("budget:" + key_sha, msg);
  }
  return result;
}

}  // namespace smartnote
