#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace smartnote {

/// Base of every error the library throws on purpose. Anything else escaping
/// the public API is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// repo-miner

class NotARepository : public Error {
 public:
  explicit NotARepository(std::string path)
      : Error("not a git repository: " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class TagNotFound : public Error {
 public:
  explicit TagNotFound(std::string tag) : Error("tag not found: " + tag), tag_(std::move(tag)) {}
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

class EmptyRange : public Error {
 public:
  explicit EmptyRange(const std::string& detail) : Error("empty commit range: " + detail) {}
};

class GitError : public Error {
 public:
  using Error::Error;
};

class AuthFailure : public Error {
 public:
  using Error::Error;
};

class RateLimited : public Error {
 public:
  RateLimited(const std::string& what, std::optional<std::chrono::seconds> retry_after)
      : Error(what), retry_after_(retry_after) {}
  std::optional<std::chrono::seconds> retry_after() const noexcept { return retry_after_; }

 private:
  std::optional<std::chrono::seconds> retry_after_;
};

// llm-module

class MissingBinding : public Error {
 public:
  explicit MissingBinding(std::string name)
      : Error("missing prompt binding: " + name), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class UnbalancedDelimiters : public Error {
 public:
  using Error::Error;
};

class ProviderError : public Error {
 public:
  ProviderError(int status, std::string body,
                std::optional<std::chrono::seconds> retry_after = std::nullopt,
                std::string context = {})
      : Error(format(status, body, context)),
        status_(status),
        body_(std::move(body)),
        retry_after_(retry_after),
        context_(std::move(context)) {}

  int status() const noexcept { return status_; }
  const std::string& body() const noexcept { return body_; }
  std::optional<std::chrono::seconds> retry_after() const noexcept { return retry_after_; }
  /// Pipeline context, e.g. the changeset sha the call was made for.
  const std::string& context() const noexcept { return context_; }

  ProviderError with_context(std::string context) const {
    return ProviderError(status_, body_, retry_after_, std::move(context));
  }

 private:
  static std::string format(int status, const std::string& body, const std::string& context) {
    std::string s = "LLM provider error (status " + std::to_string(status) + ")";
    if (!context.empty()) s += " for " + context;
    if (!body.empty()) s += ": " + body.substr(0, 300);
    return s;
  }

  int status_;
  std::string body_;
  std::optional<std::chrono::seconds> retry_after_;
  std::string context_;
};

class Timeout : public Error {
 public:
  using Error::Error;
};

class NoLabelFound : public Error {
 public:
  explicit NoLabelFound(std::string raw)
      : Error("no label found in model output: " + raw.substr(0, 120)), raw_(std::move(raw)) {}
  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

// commit-analyser

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MissingPrecomputedEmbedding : public Error {
 public:
  explicit MissingPrecomputedEmbedding(std::string sha)
      : Error("no precomputed embedding for commit " + sha), sha_(std::move(sha)) {}
  const std::string& sha() const noexcept { return sha_; }

 private:
  std::string sha_;
};

class LayoutMismatch : public Error {
 public:
  using Error::Error;
};

class TaskMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// rn-composer / rn-metrics

class NoEntries : public Error {
 public:
  NoEntries() : Error("no release note entries to organise") {}
};

class NoCommits : public Error {
 public:
  NoCommits() : Error("commit coverage needs at least one commit") {}
};

class EmptyText : public Error {
 public:
  EmptyText() : Error("readability needs at least one word") {}
};

}  // namespace smartnote
