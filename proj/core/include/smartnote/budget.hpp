#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "smartnote/repo_miner.hpp"

namespace smartnote {

class Diagnostics;

/// Per-commit diff budget in approximate tokens. Large enough that only
/// initial commits and bulk moves/deletions hit it.
inline constexpr std::size_t kDefaultDiffBudget = 6000;
inline constexpr std::size_t kMinDiffBudget = 64;

struct BudgetReport {
  std::string commit_sha;
  std::size_t original_tokens = 0;
  std::size_t retained_tokens = 0;
  bool truncated = false;
};

struct BudgetedDiff {
  std::string text;
  BudgetReport report;
  std::vector<std::string> dropped_paths;
};

/// Concatenated diff of `patches` (original order) after dropping whole files,
/// largest first and later files first on ties, until the approximate token
/// count fits `max_tokens`. On truncation a warning keyed by `key_sha` goes to
/// `diag` (once per sha). Throws std::invalid_argument if max_tokens < 64.
BudgetedDiff budget_diff(const std::string& key_sha, std::span<const FilePatch> patches,
                         std::size_t max_tokens, Diagnostics* diag = nullptr);

}  // namespace smartnote
