#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smartnote {

/// The conventional-commit label set, in canonical order.
inline constexpr std::string_view kConventionalTypes[] = {
    "feat", "fix", "docs", "style", "refactor", "perf", "test", "build", "ci", "chore", "revert"};

bool is_conventional_type(std::string_view label);

enum class ModelTask { Category, Significance };

std::string_view to_string(ModelTask t);

/// Split nodes send x to `left` when float(x) < float(threshold), matching
/// the single-precision comparison of the trainer. Leaves carry one value
/// per model output.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<double> value;

  bool is_leaf() const noexcept { return feature < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct ModelMetadata {
  std::string trainer_version;
  std::string embedder_id;
  std::size_t embedding_dim = 0;
  bool count_transform = false;  // log1p on count features
};

inline constexpr int kModelFormatVersion = 1;

struct TreeModel {
  ModelTask task = ModelTask::Significance;
  std::vector<std::string> feature_layout;
  std::vector<std::string> class_labels;  // category task only
  std::vector<double> base_margin;        // one per output; empty means zeros
  ModelMetadata metadata;
  std::vector<Tree> trees;

  /// 1 for significance, |class_labels| for category.
  std::size_t num_outputs() const noexcept;

  /// Throws InvariantViolation naming the first broken invariant.
  void validate() const;
};

/// Parses and validates the versioned JSON model format (docs/model-format.md).
/// Throws ParseError for malformed JSON or missing fields, InvariantViolation
/// for structurally invalid models.
TreeModel parse_model(std::string_view json_text);
TreeModel load_model(const std::filesystem::path& path);
std::string serialize_model(const TreeModel& model);

/// base_margin + sum of leaf values over all trees, per output.
/// Throws LayoutMismatch when features.size() differs from the layout.
std::vector<double> raw_margins(std::span<const double> features, const TreeModel& model);

struct CategoryPrediction {
  std::string label;
  double confidence = 0.0;
  std::vector<double> probabilities;  // aligned with class_labels
};

/// Softmax over the margins; argmax with ties going to the earlier label.
/// Throws TaskMismatch on a significance model.
CategoryPrediction predict_category(std::span<const double> features, const TreeModel& model);

/// Sigmoid of the margin, kept inside the open interval (0, 1).
/// Throws TaskMismatch on a category model.
double predict_significance(std::span<const double> features, const TreeModel& model);

}  // namespace smartnote
