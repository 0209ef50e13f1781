#include "smartnote/tokens.hpp"

#include "smartnote/text.hpp"

namespace smartnote {

std::size_t count_tokens(std::string_view text) noexcept {
  const std::size_t by_bytes = (text.size() + 3) / 4;
  const std::size_t pieces = text::word_count(text);
  return by_bytes > pieces ? by_bytes : pieces;
}

}  // namespace smartnote
