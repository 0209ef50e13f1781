#pragma once

#include <functional>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace smartnote {

/// Collects user-visible warnings in a thread-safe, deduplicated way.
/// Warnings with the same key are reported once; insertion order is kept
/// so rendered output stays deterministic for a deterministic pipeline.
class Diagnostics {
 public:
  using Sink = std::function<void(const std::string&)>;

  Diagnostics() = default;
  explicit Diagnostics(Sink sink) : sink_(std::move(sink)) {}

  /// Returns false if a warning with this key was already recorded.
  bool warn(const std::string& key, const std::string& message);
  bool warn(const std::string& message) { return warn(message, message); }

  std::vector<std::string> warnings() const;

 private:
  mutable std::mutex mu_;
  std::set<std::string> keys_;
  std::vector<std::string> messages_;
  Sink sink_;
};

}  // namespace smartnote
