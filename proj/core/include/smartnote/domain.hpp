#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace smartnote {

enum class ReleaseType { Major, Minor, Patch, Unknown };

enum class ProjectDomain { ApplicationSoftware, SystemSoftware, LibrariesAndFrameworks, SoftwareTools };

enum class WritingStyle { Expository, Descriptive, Persuasive };

enum class Structure { ChangeType, AffectedModule, ChangePriority };

enum class MergeKind { None, Squash, Rebase, MergeCommit };

inline constexpr std::array<ReleaseType, 4> kReleaseTypes = {
    ReleaseType::Major, ReleaseType::Minor, ReleaseType::Patch, ReleaseType::Unknown};

inline constexpr std::array<ProjectDomain, 4> kProjectDomains = {
    ProjectDomain::ApplicationSoftware, ProjectDomain::SystemSoftware,
    ProjectDomain::LibrariesAndFrameworks, ProjectDomain::SoftwareTools};

/// Identifier form, used in feature names, config files and metadata.
std::string_view to_string(ReleaseType t);
std::string_view to_string(ProjectDomain d);
std::string_view to_string(WritingStyle s);
std::string_view to_string(Structure s);
std::string_view to_string(MergeKind k);

/// Human-readable label, e.g. "Libraries & Frameworks".
std::string_view display_name(ProjectDomain d);

// Parsers accept the identifier form case-insensitively, plus a few
// spellings people type on the command line ("change-type", "libraries").
std::optional<ReleaseType> parse_release_type(std::string_view s);
std::optional<ProjectDomain> parse_project_domain(std::string_view s);
std::optional<WritingStyle> parse_writing_style(std::string_view s);
std::optional<Structure> parse_structure(std::string_view s);

}  // namespace smartnote
