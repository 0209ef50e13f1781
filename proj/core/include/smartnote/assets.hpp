#pragma once

#include <filesystem>
#include <string>

namespace smartnote {

/// Directory holding prompt templates, word lists, domain profiles and the
/// default models. Looked up in order: $SMARTNOTE_ASSET_DIR, the source tree
/// the library was built from, the install prefix.
std::filesystem::path asset_dir();

/// asset_dir() / relative. Throws smartnote::Error if the file is missing.
std::filesystem::path asset_path(const std::filesystem::path& relative);

/// Whole file as bytes. Throws smartnote::Error on failure.
std::string read_file(const std::filesystem::path& path);

}  // namespace smartnote
