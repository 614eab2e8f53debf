#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "lextok/model.hpp"

namespace lextok {

/// Either an added-token match or a stretch of ordinary text.
struct TextSegment {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::int64_t token = -1;  // added token id, or -1 for plain text
  friend bool operator==(const TextSegment&, const TextSegment&) = default;
};

/// Leftmost-longest scanner over a fixed set of added tokens. A match of a
/// single_word token touching a word character on either side is dropped and
/// scanning resumes after it; lstrip/rstrip widen a match over adjacent
/// whitespace. The returned segments tile the input.
class AddedTokenMatcher {
 public:
  explicit AddedTokenMatcher(const std::vector<const AddedToken*>& tokens);

  bool empty() const { return nodes_.size() == 1; }
  std::vector<TextSegment> split(std::string_view text) const;

 private:
  struct Node {
    std::vector<std::pair<unsigned char, std::uint32_t>> children;
    std::int32_t terminal = -1;  // index into tokens_
  };
  struct Entry {
    TokenId id;
    bool single_word;
    bool lstrip;
    bool rstrip;
  };

  std::uint32_t child(std::uint32_t node, unsigned char byte) const;

  std::vector<Node> nodes_;
  std::vector<Entry> tokens_;
  std::array<std::uint32_t, 256> root_{};  // dense first level
};

}  // namespace lextok
