#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "smartnote/tree_model.hpp"

namespace smartnote {

/// One trainer-exported (feature vector, prediction) pair.
struct ParityRecord {
  ModelTask task = ModelTask::Significance;
  std::vector<double> features;
  std::string label;                  // category only
  std::vector<double> probabilities;  // category only, aligned with class_labels
  double score = 0.0;                 // significance only
};

/// JSON: {"format": "smartnote-parity-fixture", "version": 1,
///        "category_model": path, "significance_model": path,
///        "records": [{"task", "features", "label", "probabilities"} |
///                    {"task", "features", "score"}]}.
/// Model paths are relative to the fixture file.
struct ParityFixture {
  std::filesystem::path category_model;
  std::filesystem::path significance_model;
  std::vector<ParityRecord> records;

  static ParityFixture parse(std::string_view json_text, const std::filesystem::path& base_dir = {});
  static ParityFixture load(const std::filesystem::path& path);
};

struct ParityReport {
  std::size_t category_records = 0;
  std::size_t significance_records = 0;
  double max_category_deviation = 0.0;  // over every class probability
  double max_significance_deviation = 0.0;
  std::size_t label_mismatches = 0;
  std::vector<std::string> failures;  // first few offending records

  double max_deviation() const noexcept;
  bool within(double tolerance) const noexcept;
};

/// Replays every record through the core's inference.
ParityReport replay_parity(const ParityFixture& fixture, const TreeModel& category, const TreeModel& significance,
                           double tolerance = 1e-6);
/// Loads the fixture's own models and replays.
ParityReport replay_parity(const ParityFixture& fixture, double tolerance = 1e-6);

}  // namespace smartnote
