#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smartnote {

inline constexpr std::string_view kHashedEmbedderId = "hashed-bow-v1";
inline constexpr std::size_t kDefaultEmbeddingDim = 768;

/// Hashed bag of words: lowercased word unigrams and bigrams ("fix bug")
/// are counted into bucket fnv1a64(token) % dim, then the vector is scaled
/// to unit L2 norm. Words made only of digits are skipped before pairing.
/// An empty message yields the zero vector.
std::vector<double> hashed_embedding(std::string_view message, std::size_t dim);

/// Dispatches on the embedder id. Only the hashed embedder is built in;
/// other ids need a sidecar. Throws DimensionMismatch for dim == 0 and
/// InvariantViolation for an unknown id.
std::vector<double> embed_message(std::string_view message, std::string_view embedder_id, std::size_t dim);

/// Precomputed embeddings, one JSON object per line:
///   {"sha": "<40 hex>", "embedding": [d0, d1, ...]}
/// Blank lines are skipped. All vectors must share one dimension.
class EmbeddingSidecar {
 public:
  static EmbeddingSidecar load(const std::filesystem::path& path);
  static EmbeddingSidecar parse(std::string_view jsonl);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }

  /// Throws MissingPrecomputedEmbedding, or DimensionMismatch when the
  /// stored dimension differs from `expected_dim`.
  const std::vector<double>& get(const std::string& sha, std::size_t expected_dim) const;

 private:
  std::size_t dim_ = 0;
  std::map<std::string, std::vector<double>> vectors_;
};

}  // namespace smartnote
