#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "smartnote/domain.hpp"

namespace smartnote {

/// A Semantic Versioning 2.0.0 version. Pre-release and build metadata are
/// kept verbatim; they never affect release-type classification.
struct SemVer {
  std::uint64_t major = 0;
  std::uint64_t minor = 0;
  std::uint64_t patch = 0;
  std::string prerelease;
  std::string build;

  friend bool operator==(const SemVer&, const SemVer&) = default;
};

/// Strict parse. A single leading 'v' or 'V' is accepted and ignored.
std::optional<SemVer> parse_semver(std::string_view text);

/// Release type from the highest changed core component. Non-semver input
/// on either side yields Unknown. When only the pre-release part differs the
/// release counts as Patch.
ReleaseType classify_release_type(std::string_view previous_version, std::string_view new_version);

}  // namespace smartnote
