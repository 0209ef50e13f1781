#include "smartnote/provider.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "smartnote/conventional_commit.hpp"
#include "smartnote/errors.hpp"
#include "smartnote/hash.hpp"
#include "smartnote/text.hpp"

namespace smartnote {
namespace {

using json = nlohmann::json;

std::atomic<bool> g_cancelled{false};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Built-in mock behaviour for the pipeline's own templates.

std::string mock_summary(const Prompt& p) {
  const auto message = extract_tag(p.text, "message").value_or("");
  auto title = text::title_of(message);
  static const std::regex pr_suffix(R"(\s*\(#[0-9]+\)\s*$)");
  title = std::regex_replace(title, pr_suffix, "");
  auto summary = strip_conventional_prefix(title);
  if (summary.empty()) summary = "Updated the project";
  if (summary.back() != '.' && summary.back() != '!' && summary.back() != '?') summary += '.';
  return summary;
}

// Entries inside the <entries> block; the template's own examples are skipped.
std::vector<std::string> listed_entries(const Prompt& p) {
  const auto block = extract_tag(p.text, "entries");
  return extract_tags(block ? *block : p.text, "entry");
}

std::string mock_merge(const Prompt& p) {
  auto entries = listed_entries(p);
  for (auto& e : entries) e = std::string(text::trim(e));
  return text::join(entries, "; ");
}

std::string mock_condense(const Prompt& p) {
  const auto entries = listed_entries(p);
  if (entries.empty()) return "Various small changes.";
  std::string first(text::trim(entries.front()));
  if (!first.empty() && first.back() == '.') first.pop_back();
  if (entries.size() == 1) return first + ".";
  return first + " (and " + std::to_string(entries.size() - 1) + " related changes).";
}

std::string mock_reorder(const Prompt& p) {
  return std::string(text::trim(extract_tag(p.text, "headings").value_or("")));
}

std::string mock_raw_note(const Prompt& p) {
  std::string out = "Release notes\n\n";
  for (auto line : text::split_lines(p.text)) {
    if (line.starts_with("- ")) {
      out += line;
      out += '\n';
    }
  }
  return out;
}

// Good when the title says something specific: three or more words and not
// a placeholder such as "wip" or "fix stuff".
std::string mock_quality(const Prompt& p) {
  const auto title = text::title_of(extract_tag(p.text, "message").value_or(""));
  const auto words = text::words(strip_conventional_prefix(title));
  static const std::vector<std::string> vague = {"wip", "stuff", "things", "misc", "changes", "update", "fix", "tmp"};
  std::size_t vague_hits = 0;
  for (const auto& w : words)
    if (std::find(vague.begin(), vague.end(), w) != vague.end()) ++vague_hits;
  return words.size() >= 3 && vague_hits * 2 < words.size() ? "good" : "poor";
}

using Builtin = std::string (*)(const Prompt&);

Builtin builtin_for(const std::string& id) {
  if (id == "summarise_changeset") return mock_summary;
  if (id == "merge_entries") return mock_merge;
  if (id == "condense_section") return mock_condense;
  if (id == "reorder_sections") return mock_reorder;
  if (id == "raw_release_note") return mock_raw_note;
  if (id == "commit_quality") return mock_quality;
  return nullptr;
}

}  // namespace

void CompletionParams::validate() const {
  if (!(temperature >= 0.0 && temperature <= 2.0))
    throw std::invalid_argument("temperature must be within [0, 2]");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw std::invalid_argument("top_p must be within (0, 1]");
}

void request_cancellation() noexcept { g_cancelled.store(true); }
bool cancellation_requested() noexcept { return g_cancelled.load(); }
void reset_cancellation() noexcept { g_cancelled.store(false); }

std::optional<std::string> extract_tag(std::string_view text, std::string_view tag) {
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  const auto a = text.find(open);
  if (a == std::string_view::npos) return std::nullopt;
  const auto b = text.find(close, a + open.size());
  if (b == std::string_view::npos) return std::nullopt;
  return std::string(text.substr(a + open.size(), b - a - open.size()));
}

std::vector<std::string> extract_tags(std::string_view text, std::string_view tag) {
  std::vector<std::string> out;
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  std::size_t pos = 0;
  while (true) {
    const auto a = text.find(open, pos);
    if (a == std::string_view::npos) break;
    const auto b = text.find(close, a + open.size());
    if (b == std::string_view::npos) break;
    out.emplace_back(text.substr(a + open.size(), b - a - open.size()));
    pos = b + close.size();
  }
  return out;
}

MockScript MockScript::parse(std::string_view json_text) {
  const auto doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ParseError("mock script: expected a JSON object");
  const auto& responses = doc.contains("responses") ? doc["responses"] : doc;
  if (!responses.is_object()) throw ParseError("mock script: 'responses' must be an object");
  MockScript script;
  for (const auto& [id, value] : responses.items()) {
    Entry e;
    if (value.is_string()) {
      e.fallback = value.get<std::string>();
    } else if (value.is_object()) {
      if (value.contains("default")) {
        if (!value["default"].is_string()) throw ParseError("mock script: default of " + id + " must be a string");
        e.fallback = value["default"].get<std::string>();
      }
      if (value.contains("rules")) {
        for (const auto& r : value["rules"]) {
          if (!r.is_object() || !r.contains("contains") || !r.contains("response"))
            throw ParseError("mock script: rules of " + id + " need 'contains' and 'response'");
          e.rules.push_back({r["contains"].get<std::string>(), r["response"].get<std::string>()});
        }
      }
    } else {
      throw ParseError("mock script: response for " + id + " must be a string or object");
    }
    script.entries.emplace(id, std::move(e));
  }
  return script;
}

MockScript MockScript::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read mock script " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string MockProvider::complete(const Prompt& prompt, const CompletionParams& params) {
  params.validate();
  ++calls_;
  {
    std::lock_guard lock(mu_);
    ++per_template_[prompt.template_id];
  }
  if (const auto it = script_.entries.find(prompt.template_id); it != script_.entries.end()) {
    for (const auto& rule : it->second.rules)
      if (prompt.text.find(rule.contains) != std::string::npos) return rule.response;
    if (it->second.fallback) return *it->second.fallback;
  }
  if (const auto fn = builtin_for(prompt.template_id)) return fn(prompt);
  return "mock-" + hex64(fnv1a64(prompt.text));
}

std::size_t MockProvider::call_count(const std::string& template_id) const {
  std::lock_guard lock(mu_);
  const auto it = per_template_.find(template_id);
  return it == per_template_.end() ? 0 : it->second;
}

HttpProvider::HttpProvider(Options options) : options_(std::move(options)) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(options_.base_url, m, re))
    throw std::invalid_argument("LLM base URL must look like http(s)://host[/path]: " + options_.base_url);
  origin_ = m[1].str();
  path_prefix_ = m[2].matched ? m[2].str() : "";
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  if (options_.api_key) {
    api_key_ = *options_.api_key;
  } else if (const char* env = std::getenv("SMARTNOTE_LLM_KEY")) {
    api_key_ = env;
  }
}

bool HttpProvider::is_transient(int status) noexcept {
  return status == 0 || status == 408 || status == 429 || status == 500 || status == 502 || status == 503 ||
         status == 504;
}

std::string HttpProvider::attempt(const Prompt& prompt, const CompletionParams& params) {
  httplib::Client client(origin_);
  client.set_connection_timeout(std::chrono::seconds(10));
  client.set_read_timeout(options_.timeout);
  client.set_write_timeout(options_.timeout);

  json body = {
      {"model", params.model_id},
      {"messages", json::array({{{"role", "user"}, {"content", prompt.text}}})},
      {"temperature", params.temperature},
      {"top_p", params.top_p},
      {"max_tokens", prompt.max_output_tokens},
  };
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(), "application/json");
  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout)
      throw Timeout("LLM request timed out (" + httplib::to_string(err) + ")");
    throw ProviderError(0, "transport failure: " + httplib::to_string(err));
  }
  if (res->status < 200 || res->status >= 300) {
    std::optional<std::chrono::seconds> retry_after;
    if (res->has_header("Retry-After")) {
      try {
        retry_after = std::chrono::seconds(std::stoll(res->get_header_value("Retry-After")));
      } catch (const std::exception&) {
      }
    }
    throw ProviderError(res->status, res->body, retry_after);
  }
  const auto doc = json::parse(res->body, nullptr, false);
  if (doc.is_discarded() || !doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty())
    throw ProviderError(res->status, "malformed completion response: " + res->body.substr(0, 200));
  const auto& message = doc["choices"][0]["message"];
  if (!message.is_object() || !message.contains("content") || !message["content"].is_string())
    throw ProviderError(res->status, "completion response without message content");
  return message["content"].get<std::string>();
}

std::string HttpProvider::complete(const Prompt& prompt, const CompletionParams& params) {
  params.validate();
  const int attempts = std::max(1, options_.retry.max_attempts);
  for (int i = 0;; ++i) {
    if (cancellation_requested()) throw ProviderError(0, "cancelled");
    std::chrono::milliseconds wait = options_.retry.base_delay * (1 << i);
    try {
      return attempt(prompt, params);
    } catch (const ProviderError& e) {
      if (!is_transient(e.status()) || i + 1 >= attempts) throw;
      if (e.retry_after() && *e.retry_after() <= options_.retry.max_retry_after)
        wait = std::max<std::chrono::milliseconds>(wait, *e.retry_after());
    } catch (const Timeout&) {
      if (i + 1 >= attempts) throw;
    }
    std::this_thread::sleep_for(wait);
  }
}

}  // namespace smartnote
