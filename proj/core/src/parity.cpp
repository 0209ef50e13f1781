#include "smartnote/parity.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "smartnote/assets.hpp"
#include "smartnote/errors.hpp"

namespace smartnote {
namespace {

using json = nlohmann::json;

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw ParseError(where + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

ParityFixture ParityFixture::parse(std::string_view json_text, const std::filesystem::path& base_dir) {
  const auto doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ParseError("parity fixture: not a JSON object");
  if (doc.value("format", "") != "smartnote-parity-fixture")
    throw ParseError("parity fixture: format must be \"smartnote-parity-fixture\"");
  ParityFixture f;
  for (const char* key : {"category_model", "significance_model"}) {
    if (!doc.contains(key) || !doc[key].is_string()) throw ParseError(std::string("parity fixture: missing ") + key);
  }
  f.category_model = base_dir / doc["category_model"].get<std::string>();
  f.significance_model = base_dir / doc["significance_model"].get<std::string>();
  if (!doc.contains("records") || !doc["records"].is_array()) throw ParseError("parity fixture: missing records");
  std::size_t i = 0;
  for (const auto& r : doc["records"]) {
    const auto where = "parity record " + std::to_string(i++);
    if (!r.is_object() || !r.contains("task") || !r.contains("features")) throw ParseError(where + ": incomplete");
    ParityRecord rec;
    rec.features = numbers(r["features"], where);
    if (r["task"] == "category") {
      rec.task = ModelTask::Category;
      if (!r.contains("label") || !r["label"].is_string()) throw ParseError(where + ": missing label");
      rec.label = r["label"].get<std::string>();
      rec.probabilities = numbers(r.value("probabilities", json::array()), where);
    } else if (r["task"] == "significance") {
      if (!r.contains("score") || !r["score"].is_number()) throw ParseError(where + ": missing score");
      rec.score = r["score"].get<double>();
    } else {
      throw ParseError(where + ": unknown task");
    }
    f.records.push_back(std::move(rec));
  }
  return f;
}

ParityFixture ParityFixture::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.parent_path());
}

double ParityReport::max_deviation() const noexcept {
  return std::max(max_category_deviation, max_significance_deviation);
}

bool ParityReport::within(double tolerance) const noexcept {
  return label_mismatches == 0 && max_deviation() <= tolerance;
}

ParityReport replay_parity(const ParityFixture& fixture, const TreeModel& category, const TreeModel& significance,
                           double tolerance) {
  ParityReport rep;
  auto fail = [&](std::size_t i, const std::string& what) {
    if (rep.failures.size() < 5) rep.failures.push_back("record " + std::to_string(i) + ": " + what);
  };
  for (std::size_t i = 0; i < fixture.records.size(); ++i) {
    const auto& r = fixture.records[i];
    if (r.task == ModelTask::Category) {
      ++rep.category_records;
      const auto p = predict_category(r.features, category);
      if (p.label != r.label) {
        ++rep.label_mismatches;
        fail(i, "label " + p.label + ", expected " + r.label);
      }
      if (r.probabilities.size() != p.probabilities.size()) {
        ++rep.label_mismatches;
        fail(i, "probability count differs");
        continue;
      }
      for (std::size_t k = 0; k < p.probabilities.size(); ++k) {
        const double d = std::abs(p.probabilities[k] - r.probabilities[k]);
        rep.max_category_deviation = std::max(rep.max_category_deviation, d);
        if (d > tolerance) fail(i, "class " + category.class_labels[k] + " deviates by " + std::to_string(d));
      }
    } else {
      ++rep.significance_records;
      const double d = std::abs(predict_significance(r.features, significance) - r.score);
      rep.max_significance_deviation = std::max(rep.max_significance_deviation, d);
      if (d > tolerance) fail(i, "significance deviates by " + std::to_string(d));
    }
  }
  return rep;
}

ParityReport replay_parity(const ParityFixture& fixture, double tolerance) {
  return replay_parity(fixture, load_model(fixture.category_model), load_model(fixture.significance_model), tolerance);
}

}  // namespace smartnote
