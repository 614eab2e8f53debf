#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lextok/normalization.hpp"

namespace lextok {

/// The splitting pattern for space-prefixed pieces. A single U+0020 adheres
/// to the following letter, digit or punctuation run; `\s` is the Unicode
/// White_Space property.
inline constexpr std::string_view kSpaceAdheringPattern =
    R"('s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+)";

/// Pattern for configs without space prefixing: maximal runs of one class.
inline constexpr std::string_view kIsolatedRunsPattern = R"(\p{L}+|\p{N}+|[^\s\p{L}\p{N}]+|\s+)";

/// Half-open byte range into the text being split.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

/// One pre-tokenized unit: its byte-remapped symbols and source span.
struct Piece {
  std::string symbols;
  std::size_t char_length = 0;
  Span span;
};

/// Hand-written splitters for the two pinned patterns. Input must be valid
/// UTF-8; spans tile the input.
std::vector<Span> split_space_adhering(std::string_view text);
std::vector<Span> split_isolated_runs(std::string_view text);

/// Splits with an arbitrary pattern through ICU's regex engine, HF "Isolated"
/// behaviour: matches and the gaps between them both become spans. `\s`/`\S`
/// are rewritten to the White_Space property first.
std::vector<Span> split_with_regex(std::string_view text, std::string_view pattern);

/// Pre-tokenizer descriptor as stored in a model.
struct PreTokenizerConfig {
  enum class Kind {
    space_adhering,  // ByteLevel(use_regex=true)
    isolated_runs,   // Split(kIsolatedRunsPattern) + ByteLevel(use_regex=false)
    custom_regex,    // Split(regex) + ByteLevel(use_regex=false)
    bytes_only,      // ByteLevel(use_regex=false): whole text is one piece
  };
  Kind kind = Kind::space_adhering;
  std::string regex;  // custom_regex only
  bool add_prefix_space = false;

  static PreTokenizerConfig from(const NormalizationConfig& config);
  friend bool operator==(const PreTokenizerConfig&, const PreTokenizerConfig&) = default;
};

/// Compiled pre-tokenizer. Immutable and safe to share across threads.
class PreTokenizer {
 public:
  explicit PreTokenizer(PreTokenizerConfig config);

  const PreTokenizerConfig& config() const { return config_; }
  std::vector<Span> split(std::string_view text) const;

 private:
  struct CompiledRegex;
  PreTokenizerConfig config_;
  std::shared_ptr<const CompiledRegex> regex_;
};

/// Splits normalized text into pieces per `config.space_prefix`.
std::vector<Piece> pretokenize(std::string_view normalized, const NormalizationConfig& config);

}  // namespace lextok
