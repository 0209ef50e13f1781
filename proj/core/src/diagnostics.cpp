#include "smartnote/diagnostics.hpp"

namespace smartnote {

bool Diagnostics::warn(const std::string& key, const std::string& message) {
  Sink sink;
  {
    std::lock_guard lock(mu_);
    if (!keys_.insert(key).second) return false;
    messages_.push_back(message);
    sink = sink_;
  }
  if (sink) sink(message);
  return true;
}

std::vector<std::string> Diagnostics::warnings() const {
  std::lock_guard lock(mu_);
  return messages_;
}

}  // namespace smartnote
