#include "lextok/added_tokens.hpp"

#include "lextok/normalization.hpp"
#include "lextok/utf8.hpp"

namespace lextok {

namespace {

constexpr std::uint32_t kNoChild = 0;

// Character ending right before `pos`, if any.
std::optional<char32_t> char_before(std::string_view text, std::size_t pos) {
  if (pos == 0) return std::nullopt;
  std::size_t start = pos - 1;
  while (start > 0 && utf8::is_continuation(static_cast<unsigned char>(text[start]))) --start;
  return utf8::decode_at(text, start);
}

std::optional<char32_t> char_at(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return std::nullopt;
  return utf8::decode_at(text, pos);
}

}  // namespace

AddedTokenMatcher::AddedTokenMatcher(const std::vector<const AddedToken*>& tokens) {
  nodes_.emplace_back();
  for (const AddedToken* tok : tokens) {
    if (tok->content.empty()) continue;
    std::uint32_t node = 0;
    for (unsigned char byte : tok->content) {
      std::uint32_t next = child(node, byte);
      if (next == kNoChild) {
        next = static_cast<std::uint32_t>(nodes_.size());
        nodes_[node].children.emplace_back(byte, next);
        nodes_.emplace_back();
      }
      node = next;
    }
    // Surfaces are unique after normalization in well-formed models; if two
    // collide the earlier registration wins.
    if (nodes_[node].terminal < 0) {
      nodes_[node].terminal = static_cast<std::int32_t>(tokens_.size());
      tokens_.push_back({tok->id, tok->single_word, tok->lstrip, tok->rstrip});
    }
  }
  for (const auto& [byte, next] : nodes_[0].children) root_[byte] = next;
}

std::uint32_t AddedTokenMatcher::child(std::uint32_t node, unsigned char byte) const {
  for (const auto& [b, next] : nodes_[node].children) {
    if (b == byte) return next;
  }
  return kNoChild;
}

std::vector<TextSegment> AddedTokenMatcher::split(std::string_view text) const {
  std::vector<TextSegment> out;
  if (text.empty()) return out;
  if (empty()) {
    out.push_back({0, text.size(), -1});
    return out;
  }

  std::size_t emitted = 0;  // end of the last pushed segment
  std::size_t pos = 0;
  while (pos < text.size()) {
    // Longest token starting at pos.
    std::uint32_t node = root_[static_cast<unsigned char>(text[pos])];
    if (node == kNoChild) {
      ++pos;
      continue;
    }
    std::int32_t best = nodes_[node].terminal;
    std::size_t best_end = pos + 1;
    for (std::size_t i = pos + 1; i < text.size(); ++i) {
      node = child(node, static_cast<unsigned char>(text[i]));
      if (node == kNoChild) break;
      if (nodes_[node].terminal >= 0) {
        best = nodes_[node].terminal;
        best_end = i + 1;
      }
    }
    if (best < 0) {
      ++pos;
      continue;
    }

    const Entry& entry = tokens_[static_cast<std::size_t>(best)];
    std::size_t start = pos;
    std::size_t stop = best_end;
    if (entry.single_word) {
      const auto before = char_before(text, start);
      const auto after = char_at(text, stop);
      if ((before && unicode::is_word_char(*before)) || (after && unicode::is_word_char(*after))) {
        pos = stop;
        continue;
      }
    }
    if (entry.lstrip) {
      while (start > emitted) {
        const auto c = char_before(text, start);
        if (!c || !unicode::is_whitespace(*c)) break;
        start -= utf8::encode(*c).size();
      }
    }
    if (entry.rstrip) {
      while (stop < text.size()) {
        std::size_t len = 0;
        const auto c = utf8::decode_at(text, stop, &len);
        if (!c || !unicode::is_whitespace(*c)) break;
        stop += len;
      }
    }
    if (start > emitted) out.push_back({emitted, start, -1});
    out.push_back({start, stop, static_cast<std::int64_t>(entry.id)});
    emitted = stop;
    pos = stop;
  }
  if (emitted < text.size()) out.push_back({emitted, text.size(), -1});
  return out;
}

}  // namespace lextok
