#include "lextok/normalization.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "lextok/error.hpp"
#include "lextok/utf8.hpp"

namespace lextok {

namespace {

bool is_ascii(std::string_view s) {
  for (unsigned char c : s) {
    if (c >= 0x80) return false;
  }
  return true;
}

}  // namespace

std::string normalize(std::string_view text, const NormalizationConfig& config) {
  utf8::require_valid(text);
  const bool lower = config.case_mode == CaseMode::uncased;
  if (is_ascii(text)) {
    // NFKC is the identity on ASCII.
    std::string out(text);
    if (lower) {
      for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      }
    }
    return out;
  }

  icu::UnicodeString ustr = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (config.unicode_form == UnicodeForm::nfkc) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
    if (U_FAILURE(status)) throw Error(std::string("ICU NFKC unavailable: ") + u_errorName(status));
    if (!nfkc->isNormalized(ustr, status)) {
      ustr = nfkc->normalize(ustr, status);
    }
    if (U_FAILURE(status)) throw Error(std::string("NFKC failed: ") + u_errorName(status));
  }
  if (lower) {
    // One code point at a time: full mappings (İ -> i + U+0307) but no
    // context rules, so Σ always becomes σ, never a final ς.
    icu::UnicodeString lowered;
    for (int32_t i = 0; i < ustr.length();) {
      const UChar32 cp = ustr.char32At(i);
      icu::UnicodeString one(cp);
      lowered += one.toLower(icu::Locale::getRoot());
      i += U16_LENGTH(cp);
    }
    ustr = std::move(lowered);
  }
  std::string out;
  ustr.toUTF8String(out);
  return out;
}

namespace unicode {

bool is_letter(char32_t cp) {
  return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_L_MASK) != 0;
}

bool is_number(char32_t cp) {
  return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_N_MASK) != 0;
}

bool is_whitespace(char32_t cp) {
  return u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_WHITE_SPACE);
}

bool is_word_char(char32_t cp) {
  const auto c = static_cast<UChar32>(cp);
  const auto mask = U_GET_GC_MASK(c);
  return u_hasBinaryProperty(c, UCHAR_ALPHABETIC) ||
         (mask & (U_GC_M_MASK | U_GC_ND_MASK | U_GC_PC_MASK)) != 0 ||
         u_hasBinaryProperty(c, UCHAR_JOIN_CONTROL);
}

}  // namespace unicode

}  // namespace lextok
