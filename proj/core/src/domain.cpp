#include "smartnote/domain.hpp"

#include <string>

#include "smartnote/text.hpp"

namespace smartnote {
namespace {

std::string normalise(std::string_view s) {
  std::string out;
  for (char c : text::to_lower(s)) {
    if (c == '-' || c == '_' || c == ' ' || c == '&') continue;
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string_view to_string(ReleaseType t) {
  switch (t) {
    case ReleaseType::Major: return "Major";
    case ReleaseType::Minor: return "Minor";
    case ReleaseType::Patch: return "Patch";
    case ReleaseType::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(ProjectDomain d) {
  switch (d) {
    case ProjectDomain::ApplicationSoftware: return "ApplicationSoftware";
    case ProjectDomain::SystemSoftware: return "SystemSoftware";
    case ProjectDomain::LibrariesAndFrameworks: return "LibrariesAndFrameworks";
    case ProjectDomain::SoftwareTools: return "SoftwareTools";
  }
  return "SoftwareTools";
}

std::string_view display_name(ProjectDomain d) {
  switch (d) {
    case ProjectDomain::ApplicationSoftware: return "Application Software";
    case ProjectDomain::SystemSoftware: return "System Software";
    case ProjectDomain::LibrariesAndFrameworks: return "Libraries & Frameworks";
    case ProjectDomain::SoftwareTools: return "Software Tools";
  }
  return "Software Tools";
}

std::string_view to_string(WritingStyle s) {
  switch (s) {
    case WritingStyle::Expository: return "expository";
    case WritingStyle::Descriptive: return "descriptive";
    case WritingStyle::Persuasive: return "persuasive";
  }
  return "descriptive";
}

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::ChangeType: return "ChangeType";
    case Structure::AffectedModule: return "AffectedModule";
    case Structure::ChangePriority: return "ChangePriority";
  }
  return "ChangeType";
}

std::string_view to_string(MergeKind k) {
  switch (k) {
    case MergeKind::None: return "none";
    case MergeKind::Squash: return "squash";
    case MergeKind::Rebase: return "rebase";
    case MergeKind::MergeCommit: return "merge-commit";
  }
  return "none";
}

std::optional<ReleaseType> parse_release_type(std::string_view s) {
  const auto n = normalise(s);
  for (auto t : kReleaseTypes)
    if (n == normalise(to_string(t))) return t;
  return std::nullopt;
}

std::optional<ProjectDomain> parse_project_domain(std::string_view s) {
  const auto n = normalise(s);
  for (auto d : kProjectDomains) {
    if (n == normalise(to_string(d)) || n == normalise(display_name(d))) return d;
  }
  if (n == "application" || n == "applications" || n == "app") return ProjectDomain::ApplicationSoftware;
  if (n == "system") return ProjectDomain::SystemSoftware;
  if (n == "library" || n == "libraries" || n == "framework" || n == "frameworks" ||
      n == "librariesframeworks")
    return ProjectDomain::LibrariesAndFrameworks;
  if (n == "tool" || n == "tools" || n == "softwaretool") return ProjectDomain::SoftwareTools;
  return std::nullopt;
}

std::optional<WritingStyle> parse_writing_style(std::string_view s) {
  const auto n = normalise(s);
  if (n == "expository") return WritingStyle::Expository;
  if (n == "descriptive") return WritingStyle::Descriptive;
  if (n == "persuasive") return WritingStyle::Persuasive;
  return std::nullopt;
}

std::optional<Structure> parse_structure(std::string_view s) {
  const auto n = normalise(s);
  if (n == "changetype" || n == "type") return Structure::ChangeType;
  if (n == "affectedmodule" || n == "module") return Structure::AffectedModule;
  if (n == "changepriority" || n == "priority") return Structure::ChangePriority;
  return std::nullopt;
}

}  // namespace smartnote
