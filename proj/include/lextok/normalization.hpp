#pragma once

#include <string>
#include <string_view>

namespace lextok {

enum class UnicodeForm { nfkc, none };
enum class CaseMode { cased, uncased };

/// Text normalization applied before added-token matching and splitting.
struct NormalizationConfig {
  UnicodeForm unicode_form = UnicodeForm::nfkc;
  CaseMode case_mode = CaseMode::cased;
  /// Whether a single leading space adheres to the following word piece.
  bool space_prefix = true;

  friend bool operator==(const NormalizationConfig&, const NormalizationConfig&) = default;
};

/// NFKC (when enabled), then full Unicode lowercasing for uncased configs.
/// Throws EncodingError on malformed UTF-8.
std::string normalize(std::string_view text, const NormalizationConfig& config);

/// Character classes used by the splitters and the added-token matcher.
namespace unicode {

bool is_letter(char32_t cp);      // general category L*
bool is_number(char32_t cp);      // general category N*
bool is_whitespace(char32_t cp);  // White_Space property
/// Regex `\w`: Alphabetic, marks, decimal digits, connector punctuation and
/// join controls.
bool is_word_char(char32_t cp);

}  // namespace unicode

}  // namespace lextok
