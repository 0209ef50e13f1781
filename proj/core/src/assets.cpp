#include "smartnote/assets.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "smartnote/errors.hpp"

namespace smartnote {

std::filesystem::path asset_dir() {
  if (const char* env = std::getenv("SMARTNOTE_ASSET_DIR"); env && *env) return env;
  std::error_code ec;
#ifdef SMARTNOTE_SOURCE_ASSET_DIR
  if (std::filesystem::is_directory(SMARTNOTE_SOURCE_ASSET_DIR, ec)) return SMARTNOTE_SOURCE_ASSET_DIR;
#endif
#ifdef SMARTNOTE_INSTALL_ASSET_DIR
  if (std::filesystem::is_directory(SMARTNOTE_INSTALL_ASSET_DIR, ec)) return SMARTNOTE_INSTALL_ASSET_DIR;
#endif
  throw Error("smartnote assets not found; set SMARTNOTE_ASSET_DIR");
}

std::filesystem::path asset_path(const std::filesystem::path& relative) {
  auto p = asset_dir() / relative;
  std::error_code ec;
  if (!std::filesystem::exists(p, ec)) throw Error("missing asset: " + p.string());
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace smartnote
