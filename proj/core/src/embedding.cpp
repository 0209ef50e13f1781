#include "smartnote/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/hash.hpp"
#include "smartnote/text.hpp"

namespace smartnote {

std::vector<double> hashed_embedding(std::string_view message, std::size_t dim) {
  if (dim == 0) throw DimensionMismatch("embedding dimension must be positive");
  std::vector<double> v(dim, 0.0);
  // Pure numbers (issue and PR references, versions) carry no meaning and
  // would only add collisions.
  auto ws = text::words(message);
  std::erase_if(ws, [](const std::string& w) {
    return std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
  });
  for (std::size_t i = 0; i < ws.size(); ++i) {
    v[fnv1a64(ws[i]) % dim] += 1.0;
    if (i + 1 < ws.size()) v[fnv1a64(ws[i] + " " + ws[i + 1]) % dim] += 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

std::vector<double> embed_message(std::string_view message, std::string_view embedder_id, std::size_t dim) {
  if (embedder_id == kHashedEmbedderId) return hashed_embedding(message, dim);
  throw InvariantViolation("embedder '" + std::string(embedder_id) +
                           "' is not built in; supply precomputed embeddings");
}

EmbeddingSidecar EmbeddingSidecar::parse(std::string_view jsonl) {
  EmbeddingSidecar out;
  std::size_t line_no = 0;
  for (auto line : text::split_lines(jsonl)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto doc = nlohmann::json::parse(line, nullptr, false);
    const auto where = "embedding sidecar line " + std::to_string(line_no);
    if (doc.is_discarded() || !doc.is_object()) throw ParseError(where + ": not a JSON object");
    if (!doc.contains("sha") || !doc["sha"].is_string()) throw ParseError(where + ": missing sha");
    if (!doc.contains("embedding") || !doc["embedding"].is_array())
      throw ParseError(where + ": missing embedding array");
    std::vector<double> v;
    v.reserve(doc["embedding"].size());
    for (const auto& x : doc["embedding"]) {
      if (!x.is_number()) throw ParseError(where + ": non-numeric embedding value");
      v.push_back(x.get<double>());
    }
    if (v.empty()) throw ParseError(where + ": empty embedding");
    if (out.dim_ == 0) out.dim_ = v.size();
    if (v.size() != out.dim_)
      throw DimensionMismatch(where + ": dimension " + std::to_string(v.size()) + ", expected " +
                              std::to_string(out.dim_));
    out.vectors_.insert_or_assign(doc["sha"].get<std::string>(), std::move(v));
  }
  return out;
}

EmbeddingSidecar EmbeddingSidecar::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read embedding sidecar " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const std::vector<double>& EmbeddingSidecar::get(const std::string& sha, std::size_t expected_dim) const {
  if (dim_ != 0 && dim_ != expected_dim)
    throw DimensionMismatch("sidecar embeddings have dimension " + std::to_string(dim_) + ", model expects " +
                            std::to_string(expected_dim));
  const auto it = vectors_.find(sha);
  if (it == vectors_.end()) throw MissingPrecomputedEmbedding(sha);
  return it->second;
}

}  // namespace smartnote
