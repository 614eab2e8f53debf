#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lextok/model.hpp"

namespace lextok {

/// Half-open range of character (scalar value) positions.
struct CharRange {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const CharRange&, const CharRange&) = default;
};

struct EncodeResult {
  std::vector<TokenId> ids;
  /// Text each token stands for; byte tokens that split a character render
  /// with U+FFFD.
  std::vector<std::string> surfaces;
  /// Positions into the normalized text. A character split across byte
  /// tokens belongs to the token holding its first byte, so offsets always
  /// tile the text.
  std::vector<CharRange> offsets;
  /// The text the offsets index: normalized input with special tokens kept
  /// verbatim.
  std::string normalized;
};

/// normalize -> added-token scan -> split -> lowest-rank-first merging.
EncodeResult encode(const TokenizerModel& model, std::string_view text);

/// Ids only; same pipeline as encode without offset bookkeeping.
std::vector<TokenId> encode_ids(const TokenizerModel& model, std::string_view text);

/// Applies merges to one pre-tokenized piece given as raw bytes. Exposed for
/// tests.
std::vector<TokenId> merge_piece(const TokenizerModel& model, std::string_view piece_bytes);

struct DecodeOptions {
  bool skip_specials = false;
};

/// Concatenates token surfaces. Throws ArgumentError naming the position of
/// the first out-of-range id. Malformed UTF-8 from partial byte tokens is
/// replaced with U+FFFD.
std::string decode(const TokenizerModel& model, std::span<const TokenId> ids,
                   DecodeOptions options = {});

enum class Task { causal, masked };

/// causal: start + body + end; masked: classifier + body + separator.
/// Throws ArgumentError naming a missing special.
std::vector<TokenId> encode_for_task(const TokenizerModel& model, std::string_view text, Task task);

/// Character length used in size statistics: decoded surface with one
/// leading space removed (when something remains).
std::size_t display_length(const TokenizerModel& model, TokenId id);

struct VocabReport {
  std::size_t size = 0;
  std::size_t specials = 0;
  std::size_t added = 0;
  std::size_t longest = 0;          // over learned (non-added) tokens
  std::size_t longest_overall = 0;  // including added tokens
  std::array<std::size_t, 11> by_length{};  // [0]: lengths 1 (and 0), ..., [9]: 10, [10]: >10
};

VocabReport vocab_report(const TokenizerModel& model);

}  // namespace lextok
