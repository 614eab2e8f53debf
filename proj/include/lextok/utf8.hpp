#pragma once

// Small UTF-8 helpers shared by the normalizer, the runtime and the metrics.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lextok/error.hpp"

namespace lextok::utf8 {

inline bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

/// Length of the sequence announced by a lead byte, 0 for an invalid lead.
inline std::size_t sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if (lead >= 0xC2 && lead <= 0xDF) return 2;
  if (lead >= 0xE0 && lead <= 0xEF) return 3;
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  return 0;
}

/// Decodes one scalar value starting at `pos`. Returns nullopt on malformed
/// input (overlong forms, surrogates, truncation, values above U+10FFFF).
inline std::optional<char32_t> decode_at(std::string_view s, std::size_t pos,
                                         std::size_t* length = nullptr) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  const std::size_t n = sequence_length(lead);
  if (n == 0 || pos + n > s.size()) return std::nullopt;
  char32_t cp = n == 1 ? lead : lead & (0x7F >> n);
  for (std::size_t i = 1; i < n; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if (!is_continuation(b)) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  if ((n == 3 && cp < 0x800) || (n == 4 && cp < 0x10000) || cp > 0x10FFFF ||
      (cp >= 0xD800 && cp <= 0xDFFF)) {
    return std::nullopt;
  }
  if (length != nullptr) *length = n;
  return cp;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(char32_t cp) {
  std::string out;
  append(out, cp);
  return out;
}

/// Byte offset of the first malformed sequence, or nullopt when valid.
inline std::optional<std::size_t> first_invalid(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t n = 0;
    if (!decode_at(s, pos, &n)) return pos;
    pos += n;
  }
  return std::nullopt;
}

inline bool is_valid(std::string_view s) { return !first_invalid(s).has_value(); }

inline void require_valid(std::string_view s) {
  if (auto bad = first_invalid(s)) throw EncodingError("invalid UTF-8", *bad);
}

/// Number of scalar values in valid UTF-8.
inline std::size_t count_chars(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += is_continuation(c) ? 0 : 1;
  return n;
}

/// Character length of a byte string that may hold partial sequences (a
/// byte-level token can split a character). Each complete or truncated
/// sequence counts once; every stray continuation byte counts once.
inline std::size_t lenient_char_length(std::string_view bytes) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto lead = static_cast<unsigned char>(bytes[pos]);
    const std::size_t want = sequence_length(lead);
    ++n;
    ++pos;
    if (want <= 1) continue;
    for (std::size_t i = 1; i < want && pos < bytes.size() &&
                            is_continuation(static_cast<unsigned char>(bytes[pos]));
         ++i) {
      ++pos;
    }
  }
  return n;
}

/// Replaces malformed sequences with U+FFFD, one per maximal bad subpart.
inline std::string to_valid_lossy(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t n = 0;
    if (decode_at(s, pos, &n)) {
      out.append(s.substr(pos, n));
      pos += n;
      continue;
    }
    out.append("\xEF\xBF\xBD");
    const std::size_t want = sequence_length(static_cast<unsigned char>(s[pos]));
    ++pos;
    for (std::size_t i = 1; i < want && pos < s.size() &&
                            is_continuation(static_cast<unsigned char>(s[pos]));
         ++i) {
      ++pos;
    }
  }
  return out;
}

}  // namespace lextok::utf8
