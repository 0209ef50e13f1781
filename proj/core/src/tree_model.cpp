#include "smartnote/tree_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/features.hpp"

namespace smartnote {
namespace {

using json = nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing '" + key + "'");
  return obj[key];
}

std::vector<double> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw ParseError(where + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

// Iterative walk that rejects cycles and shared children.
void check_tree(const Tree& tree, std::size_t t, std::size_t layout_size, std::size_t outputs) {
  const auto where = "tree " + std::to_string(t);
  if (tree.nodes.empty()) throw InvariantViolation(where + ": no nodes");
  std::vector<char> seen(tree.nodes.size(), 0);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (seen[i]) throw InvariantViolation(where + ": node " + std::to_string(i) + " is reachable twice (cycle)");
    seen[i] = 1;
    const auto& n = tree.nodes[i];
    const auto node_where = where + " node " + std::to_string(i);
    if (n.is_leaf()) {
      if (n.value.size() != outputs)
        throw InvariantViolation(node_where + ": leaf has " + std::to_string(n.value.size()) +
                                 " values, model has " + std::to_string(outputs) + " outputs");
      for (double v : n.value)
        if (!std::isfinite(v)) throw InvariantViolation(node_where + ": non-finite leaf value");
      continue;
    }
    if (static_cast<std::size_t>(n.feature) >= layout_size)
      throw InvariantViolation(node_where + ": feature index " + std::to_string(n.feature) +
                               " out of range (layout has " + std::to_string(layout_size) + ")");
    if (!std::isfinite(n.threshold)) throw InvariantViolation(node_where + ": non-finite threshold");
    for (int child : {n.left, n.right}) {
      if (child < 0 || static_cast<std::size_t>(child) >= tree.nodes.size())
        throw InvariantViolation(node_where + ": child index " + std::to_string(child) + " out of range");
      stack.push_back(child);
    }
  }
}

const TreeNode& leaf_for(const Tree& tree, std::span<const double> x) {
  const TreeNode* n = &tree.nodes[0];
  while (!n->is_leaf()) {
    const bool go_left = static_cast<float>(x[n->feature]) < static_cast<float>(n->threshold);
    n = &tree.nodes[go_left ? n->left : n->right];
  }
  return *n;
}

}  // namespace

bool is_conventional_type(std::string_view label) {
  return std::find(std::begin(kConventionalTypes), std::end(kConventionalTypes), label) !=
         std::end(kConventionalTypes);
}

std::string_view to_string(ModelTask t) { return t == ModelTask::Category ? "category" : "significance"; }

std::size_t TreeModel::num_outputs() const noexcept {
  return task == ModelTask::Category ? class_labels.size() : 1;
}

void TreeModel::validate() const {
  if (feature_layout.empty()) throw InvariantViolation("model has an empty feature layout");
  if (task == ModelTask::Category) {
    if (class_labels.empty()) throw InvariantViolation("category model has no class labels");
    std::set<std::string> unique;
    for (const auto& l : class_labels) {
      if (!is_conventional_type(l)) throw InvariantViolation("class label '" + l + "' is not a conventional-commit type");
      if (!unique.insert(l).second) throw InvariantViolation("duplicate class label '" + l + "'");
    }
  } else if (!class_labels.empty()) {
    throw InvariantViolation("significance model must not declare class labels");
  }
  if (!base_margin.empty() && base_margin.size() != num_outputs())
    throw InvariantViolation("base_margin has " + std::to_string(base_margin.size()) + " values, expected " +
                             std::to_string(num_outputs()));
  for (double v : base_margin)
    if (!std::isfinite(v)) throw InvariantViolation("non-finite base_margin");
  if (metadata.embedder_id.empty()) throw InvariantViolation("model metadata lacks embedder_id");

  std::set<std::string> names;
  std::size_t emb = 0;
  for (const auto& f : feature_layout) {
    if (!names.insert(f).second) throw InvariantViolation("duplicate feature '" + f + "' in layout");
    const auto kind = classify_feature_name(f);
    if (!kind) throw InvariantViolation("unknown feature '" + f + "' in layout");
    if (kind->kind == FeatureKind::Embedding) {
      if (kind->index >= metadata.embedding_dim)
        throw InvariantViolation("layout feature '" + f + "' exceeds embedding_dim " +
                                 std::to_string(metadata.embedding_dim));
      ++emb;
    }
  }
  if (emb != metadata.embedding_dim)
    throw InvariantViolation("layout has " + std::to_string(emb) + " embedding features but embedding_dim is " +
                             std::to_string(metadata.embedding_dim));
  if (trees.empty()) throw InvariantViolation("model has no trees");
  for (std::size_t t = 0; t < trees.size(); ++t) check_tree(trees[t], t, feature_layout.size(), num_outputs());
}

TreeModel parse_model(std::string_view json_text) {
  const auto doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ParseError("model: not a JSON object");
  const std::string where = "model";
  if (require(doc, "format", where) != "smartnote-tree-model")
    throw ParseError("model: format must be \"smartnote-tree-model\"");
  const auto& version = require(doc, "version", where);
  if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion)
    throw ParseError("model: unsupported format version " + version.dump());

  TreeModel m;
  const auto& task = require(doc, "task", where);
  if (task == "category") {
    m.task = ModelTask::Category;
  } else if (task == "significance") {
    m.task = ModelTask::Significance;
  } else {
    throw ParseError("model: task must be \"category\" or \"significance\"");
  }
  const auto& layout = require(doc, "feature_layout", where);
  if (!layout.is_array()) throw ParseError("model: feature_layout must be an array");
  for (const auto& f : layout) {
    if (!f.is_string()) throw ParseError("model: feature names must be strings");
    m.feature_layout.push_back(f.get<std::string>());
  }
  if (doc.contains("class_labels")) {
    if (!doc["class_labels"].is_array()) throw ParseError("model: class_labels must be an array");
    for (const auto& l : doc["class_labels"]) {
      if (!l.is_string()) throw ParseError("model: class labels must be strings");
      m.class_labels.push_back(l.get<std::string>());
    }
  }
  if (doc.contains("base_margin")) m.base_margin = number_array(doc["base_margin"], "model base_margin");

  const auto& meta = require(doc, "metadata", where);
  auto meta_string = [&](const char* key) {
    const auto& v = require(meta, key, "model metadata");
    if (!v.is_string()) throw ParseError(std::string("model metadata: ") + key + " must be a string");
    return v.get<std::string>();
  };
  m.metadata.trainer_version = meta_string("trainer_version");
  m.metadata.embedder_id = meta_string("embedder_id");
  const auto& dim = require(meta, "embedding_dim", "model metadata");
  if (!dim.is_number_unsigned()) throw ParseError("model metadata: embedding_dim must be a non-negative integer");
  m.metadata.embedding_dim = dim.get<std::size_t>();
  if (meta.contains("count_transform")) {
    const auto& ct = meta["count_transform"];
    if (ct == "log1p") {
      m.metadata.count_transform = true;
    } else if (ct == "none") {
      m.metadata.count_transform = false;
    } else {
      throw ParseError("model metadata: count_transform must be \"none\" or \"log1p\"");
    }
  }

  const auto& trees = require(doc, "trees", where);
  if (!trees.is_array()) throw ParseError("model: trees must be an array");
  for (std::size_t t = 0; t < trees.size(); ++t) {
    const auto tw = "model tree " + std::to_string(t);
    const auto& nodes = require(trees[t], "nodes", tw);
    if (!nodes.is_array()) throw ParseError(tw + ": nodes must be an array");
    Tree tree;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      const auto nw = tw + " node " + std::to_string(i);
      TreeNode node;
      if (n.is_object() && n.contains("value")) {
        node.value = number_array(n["value"], nw);
      } else {
        const auto& f = require(n, "feature", nw);
        const auto& th = require(n, "threshold", nw);
        const auto& l = require(n, "left", nw);
        const auto& r = require(n, "right", nw);
        if (!f.is_number_integer() || !th.is_number() || !l.is_number_integer() || !r.is_number_integer())
          throw ParseError(nw + ": bad split fields");
        node.feature = f.get<int>();
        if (node.feature < 0) throw InvariantViolation(nw + ": negative feature index");
        node.threshold = th.get<double>();
        node.left = l.get<int>();
        node.right = r.get<int>();
      }
      tree.nodes.push_back(std::move(node));
    }
    m.trees.push_back(std::move(tree));
  }
  m.validate();
  return m;
}

TreeModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read model file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(path.string() + ": " + e.what());
  }
}

std::string serialize_model(const TreeModel& m) {
  json doc;
  doc["format"] = "smartnote-tree-model";
  doc["version"] = kModelFormatVersion;
  doc["task"] = std::string(to_string(m.task));
  doc["feature_layout"] = m.feature_layout;
  if (m.task == ModelTask::Category) doc["class_labels"] = m.class_labels;
  if (!m.base_margin.empty()) doc["base_margin"] = m.base_margin;
  doc["metadata"] = {{"trainer_version", m.metadata.trainer_version},
                     {"embedder_id", m.metadata.embedder_id},
                     {"embedding_dim", m.metadata.embedding_dim},
                     {"count_transform", m.metadata.count_transform ? "log1p" : "none"}};
  json trees = json::array();
  for (const auto& t : m.trees) {
    json nodes = json::array();
    for (const auto& n : t.nodes) {
      if (n.is_leaf()) {
        nodes.push_back({{"value", n.value}});
      } else {
        nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right}});
      }
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }
  doc["trees"] = std::move(trees);
  return doc.dump(1) + "\n";
}

std::vector<double> raw_margins(std::span<const double> x, const TreeModel& model) {
  if (x.size() != model.feature_layout.size())
    throw LayoutMismatch("feature vector has " + std::to_string(x.size()) + " values, model layout has " +
                         std::to_string(model.feature_layout.size()));
  const std::size_t k = model.num_outputs();
  std::vector<double> out = model.base_margin.empty() ? std::vector<double>(k, 0.0) : model.base_margin;
  for (const auto& tree : model.trees) {
    const auto& leaf = leaf_for(tree, x);
    for (std::size_t i = 0; i < k; ++i) out[i] += leaf.value[i];
  }
  return out;
}

CategoryPrediction predict_category(std::span<const double> x, const TreeModel& model) {
  if (model.task != ModelTask::Category) throw TaskMismatch("predict_category needs a category model");
  const auto margins = raw_margins(x, model);
  const double mx = *std::max_element(margins.begin(), margins.end());
  CategoryPrediction p;
  p.probabilities.resize(margins.size());
  double total = 0.0;
  for (std::size_t i = 0; i < margins.size(); ++i) total += p.probabilities[i] = std::exp(margins[i] - mx);
  for (auto& v : p.probabilities) v /= total;
  std::size_t best = 0;
  for (std::size_t i = 1; i < margins.size(); ++i)
    if (margins[i] > margins[best]) best = i;
  p.label = model.class_labels[best];
  p.confidence = p.probabilities[best];
  return p;
}

double predict_significance(std::span<const double> x, const TreeModel& model) {
  if (model.task != ModelTask::Significance) throw TaskMismatch("predict_significance needs a significance model");
  const double m = raw_margins(x, model)[0];
  const double s = 1.0 / (1.0 + std::exp(-m));
  constexpr double kEps = 1e-12;
  return std::clamp(s, kEps, 1.0 - kEps);
}

}  // namespace smartnote
