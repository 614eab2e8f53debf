#include "lextok/runtime.hpp"

#include <algorithm>
#include <queue>

#include "lextok/added_tokens.hpp"
#include "lextok/byte_remap.hpp"
#include "lextok/error.hpp"
#include "lextok/utf8.hpp"

namespace lextok {

namespace {

struct Symbol {
  TokenId id;
  int prev;
  int next;
  std::size_t len;  // bytes covered; 0 once merged away
};

struct PendingMerge {
  std::size_t rank;
  int pos;
  TokenId merged;
  bool operator>(const PendingMerge& other) const {
    return rank != other.rank ? rank > other.rank : pos > other.pos;
  }
};

struct TokenSpan {
  TokenId id;
  std::size_t bytes;
};

// Merges one piece given as raw bytes; returns tokens with the bytes each
// covers.
void merge_bytes(const TokenizerModel& model, std::string_view bytes, std::vector<TokenSpan>& out) {
  if (bytes.empty()) return;
  if (model.parts().ignore_merges) {
    if (auto whole = model.find(byte_remap(bytes))) {
      out.push_back({*whole, bytes.size()});
      return;
    }
  }

  std::vector<Symbol> symbols;
  symbols.reserve(bytes.size());
  const auto unk = model.parts().unk_token ? model.find(*model.parts().unk_token) : std::nullopt;
  std::size_t dropped = 0;
  for (unsigned char b : bytes) {
    auto id = model.byte_token(b);
    if (!id) id = unk;
    if (!id) {
      ++dropped;  // no byte token and no unknown token: the byte is skipped
      continue;
    }
    const int index = static_cast<int>(symbols.size());
    symbols.push_back({*id, index - 1, index + 1, 1 + dropped});
    dropped = 0;
  }
  if (symbols.empty()) return;
  symbols.back().next = -1;
  symbols.back().len += dropped;

  std::priority_queue<PendingMerge, std::vector<PendingMerge>, std::greater<>> queue;
  auto push_pair = [&](int pos) {
    const int next = symbols[static_cast<std::size_t>(pos)].next;
    if (next < 0) return;
    if (auto target = model.merge_for(symbols[static_cast<std::size_t>(pos)].id,
                                      symbols[static_cast<std::size_t>(next)].id)) {
      queue.push({target->rank, pos, target->merged});
    }
  };
  for (int i = 0; i + 1 < static_cast<int>(symbols.size()); ++i) push_pair(i);

  while (!queue.empty()) {
    const PendingMerge top = queue.top();
    queue.pop();
    Symbol& left = symbols[static_cast<std::size_t>(top.pos)];
    if (left.len == 0 || left.next < 0) continue;
    Symbol& right = symbols[static_cast<std::size_t>(left.next)];
    const auto current = model.merge_for(left.id, right.id);
    if (!current || current->merged != top.merged) continue;

    left.id = top.merged;
    left.len += right.len;
    right.len = 0;
    left.next = right.next;
    if (left.next >= 0) symbols[static_cast<std::size_t>(left.next)].prev = top.pos;
    if (left.prev >= 0) push_pair(left.prev);
    push_pair(top.pos);
  }

  for (const Symbol& s : symbols) {
    if (s.len > 0) out.push_back({s.id, s.len});
  }
}

class Encoder {
 public:
  Encoder(const TokenizerModel& model, bool track) : model_(model), track_(track) {}

  void run(std::string_view text) {
    utf8::require_valid(text);
    for (const TextSegment& seg : model_.raw_matcher().split(text)) {
      const auto piece = text.substr(seg.begin, seg.end - seg.begin);
      if (seg.token >= 0) {
        emit_added(static_cast<TokenId>(seg.token), piece);
      } else {
        encode_normalized(normalize(piece, model_.normalization()));
      }
    }
  }

  std::vector<TokenId> ids;
  std::vector<std::size_t> byte_ends;  // end of each token in `normalized`
  std::string normalized;

 private:
  void emit_added(TokenId id, std::string_view covered) {
    ids.push_back(id);
    if (track_) {
      normalized.append(covered);
      byte_ends.push_back(normalized.size());
    }
  }

  void encode_normalized(const std::string& text) {
    for (const TextSegment& seg : model_.normalized_matcher().split(text)) {
      const auto piece = std::string_view(text).substr(seg.begin, seg.end - seg.begin);
      if (seg.token >= 0) {
        emit_added(static_cast<TokenId>(seg.token), piece);
      } else {
        encode_plain(piece);
      }
    }
  }

  void encode_plain(std::string_view text) {
    const auto& pre = model_.pre_tokenizer();
    std::string prefixed;
    std::size_t virtual_bytes = 0;
    if (pre.config().add_prefix_space && !text.empty() && text.front() != ' ') {
      prefixed = " " + std::string(text);
      text = prefixed;
      virtual_bytes = 1;
    }
    for (const Span& span : pre.split(text)) {
      spans_.clear();
      merge_bytes(model_, text.substr(span.begin, span.end - span.begin), spans_);
      std::size_t cursor = span.begin;
      for (const TokenSpan& tok : spans_) {
        ids.push_back(tok.id);
        cursor += tok.bytes;
        if (track_) {
          const std::size_t real = cursor > virtual_bytes ? cursor - virtual_bytes : 0;
          byte_ends.push_back(normalized.size() + real);
        }
      }
    }
    if (track_) normalized.append(text.substr(virtual_bytes));
  }

  const TokenizerModel& model_;
  bool track_;
  std::vector<TokenSpan> spans_;
};

}  // namespace

std::vector<TokenId> merge_piece(const TokenizerModel& model, std::string_view piece_bytes) {
  std::vector<TokenSpan> spans;
  merge_bytes(model, piece_bytes, spans);
  std::vector<TokenId> ids;
  ids.reserve(spans.size());
  for (const auto& s : spans) ids.push_back(s.id);
  return ids;
}

EncodeResult encode(const TokenizerModel& model, std::string_view text) {
  Encoder enc(model, true);
  enc.run(text);

  EncodeResult result;
  result.ids = std::move(enc.ids);
  result.normalized = std::move(enc.normalized);
  result.surfaces.reserve(result.ids.size());
  result.offsets.reserve(result.ids.size());

  // Character index of each byte boundary, counting lead bytes.
  std::size_t byte_pos = 0;
  std::size_t chars = 0;
  std::size_t start_char = 0;
  for (std::size_t i = 0; i < result.ids.size(); ++i) {
    const std::size_t end = enc.byte_ends[i];
    for (; byte_pos < end; ++byte_pos) {
      if (!utf8::is_continuation(static_cast<unsigned char>(result.normalized[byte_pos]))) ++chars;
    }
    // A character whose lead byte sits in this token belongs to it, even if
    // its continuation bytes spill into the next token.
    result.offsets.push_back({start_char, chars});
    start_char = chars;
    result.surfaces.push_back(utf8::to_valid_lossy(model.surface_bytes(result.ids[i])));
  }
  return result;
}

std::vector<TokenId> encode_ids(const TokenizerModel& model, std::string_view text) {
  Encoder enc(model, false);
  enc.run(text);
  return std::move(enc.ids);
}

std::string decode(const TokenizerModel& model, std::span<const TokenId> ids, DecodeOptions options) {
  std::string bytes;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const TokenId id = ids[i];
    if (id >= model.size()) {
      throw ArgumentError("token id " + std::to_string(id) + " at position " + std::to_string(i) +
                          " is out of range (vocabulary size " + std::to_string(model.size()) + ")");
    }
    if (options.skip_specials && model.is_special(id)) continue;
    bytes += model.surface_bytes(id);
  }
  return utf8::to_valid_lossy(bytes);
}

std::vector<TokenId> encode_for_task(const TokenizerModel& model, std::string_view text, Task task) {
  const SpecialRole open = task == Task::causal ? SpecialRole::start : SpecialRole::classifier;
  const SpecialRole close = task == Task::causal ? SpecialRole::end : SpecialRole::separator;
  const auto open_id = model.special(open);
  const auto close_id = model.special(close);
  if (!open_id) throw ArgumentError("model has no '" + std::string(to_string(open)) + "' special token");
  if (!close_id) throw ArgumentError("model has no '" + std::string(to_string(close)) + "' special token");
  std::vector<TokenId> ids{*open_id};
  const auto body = encode_ids(model, text);
  ids.insert(ids.end(), body.begin(), body.end());
  ids.push_back(*close_id);
  return ids;
}

std::size_t display_length(const TokenizerModel& model, TokenId id) {
  std::string_view bytes = model.surface_bytes(id);
  if (bytes.size() > 1 && bytes.front() == ' ') bytes.remove_prefix(1);
  return utf8::lenient_char_length(bytes);
}

VocabReport vocab_report(const TokenizerModel& model) {
  VocabReport report;
  report.size = model.size();
  for (TokenId id = 0; id < model.size(); ++id) {
    const std::size_t len = display_length(model, id);
    report.by_length[std::min<std::size_t>(std::max<std::size_t>(len, 1), 11) - 1]++;
    report.longest_overall = std::max(report.longest_overall, len);
    if (const AddedToken* tok = model.added_token(id)) {
      (tok->special ? report.specials : report.added)++;
    } else {
      report.longest = std::max(report.longest, len);
    }
  }
  return report;
}

}  // namespace lextok
