#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace smartnote {

/// Sampling parameters. The defaults (temperature 0, top-p 0.1) keep
/// outputs focused and close to deterministic.
struct CompletionParams {
  double temperature = 0.0;
  double top_p = 0.1;
  std::string model_id = "gpt-4o";

  /// Throws std::invalid_argument outside temperature [0,2], top_p (0,1].
  void validate() const;
};

struct Prompt {
  std::string template_id;
  std::string text;
  int max_output_tokens = 512;
};

class LlmProvider {
 public:
  virtual ~LlmProvider() = default;
  /// Thread-safe. Throws ProviderError or Timeout.
  virtual std::string complete(const Prompt& prompt, const CompletionParams& params) = 0;
  virtual std::string name() const = 0;
};

/// Process-wide cancellation flag (set from a SIGINT handler). Providers
/// refuse new attempts once it is set.
void request_cancellation() noexcept;
bool cancellation_requested() noexcept;
void reset_cancellation() noexcept;

/// Scripted responses for the mock provider, keyed by template id. A value
/// is either a plain response or `{ "default": ..., "rules": [{"contains":
/// ..., "response": ...}] }` where the first rule whose text occurs in the
/// prompt wins.
struct MockScript {
  struct Rule {
    std::string contains;
    std::string response;
  };
  struct Entry {
    std::optional<std::string> fallback;
    std::vector<Rule> rules;
  };
  std::map<std::string, Entry> entries;

  static MockScript parse(std::string_view json_text);
  static MockScript load(const std::filesystem::path& path);
};

/// Deterministic offline provider. Resolution order: scripted response,
/// built-in behaviour for the pipeline's own templates, then a stable hash
/// of the prompt text.
class MockProvider final : public LlmProvider {
 public:
  MockProvider() = default;
  explicit MockProvider(MockScript script) : script_(std::move(script)) {}

  std::string complete(const Prompt& prompt, const CompletionParams& params) override;
  std::string name() const override { return "mock"; }

  std::size_t call_count() const noexcept { return calls_.load(); }
  std::size_t call_count(const std::string& template_id) const;

 private:
  MockScript script_;
  std::atomic<std::size_t> calls_{0};
  mutable std::mutex mu_;
  std::map<std::string, std::size_t> per_template_;
};

/// Content of the first `<tag>...</tag>` block, or nullopt.
std::optional<std::string> extract_tag(std::string_view text, std::string_view tag);
/// Contents of all `<tag>...</tag>` blocks, in order.
std::vector<std::string> extract_tags(std::string_view text, std::string_view tag);

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds base_delay{1000};  // doubled on each retry
  std::chrono::seconds max_retry_after{30};    // longer Retry-After values fall back to backoff
};

/// OpenAI-compatible chat-completions client.
class HttpProvider final : public LlmProvider {
 public:
  struct Options {
    std::string base_url = "https://api.openai.com/v1";
    std::optional<std::string> api_key;  // nullopt: read SMARTNOTE_LLM_KEY
    std::chrono::seconds timeout{120};
    RetryPolicy retry;
  };

  explicit HttpProvider(Options options);

  std::string complete(const Prompt& prompt, const CompletionParams& params) override;
  std::string name() const override { return "live"; }

  bool has_api_key() const noexcept { return !api_key_.empty(); }

  /// Statuses worth retrying.
  static bool is_transient(int status) noexcept;

 private:
  std::string attempt(const Prompt& prompt, const CompletionParams& params);

  Options options_;
  std::string origin_;
  std::string path_prefix_;
  std::string api_key_;
};

}  // namespace smartnote
