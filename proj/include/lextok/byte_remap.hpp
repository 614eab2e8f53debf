#pragma once

// Byte-level alphabet: a bijection between the 256 byte values and 256
// printable code points. Printable Latin-1 bytes map to themselves; the rest
// (controls, space, DEL, NBSP, soft hyphen) are shifted to U+0100 upward in
// byte order, so 0x20 becomes U+0120 'Ġ'.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lextok/error.hpp"
#include "lextok/utf8.hpp"

namespace lextok {

namespace detail {

constexpr bool is_self_mapped(unsigned b) {
  return (b >= 0x21 && b <= 0x7E) || (b >= 0xA1 && b <= 0xAC) || (b >= 0xAE && b <= 0xFF);
}

constexpr std::array<char32_t, 256> make_byte_table() {
  std::array<char32_t, 256> table{};
  char32_t next = 256;
  for (unsigned b = 0; b < 256; ++b) table[b] = is_self_mapped(b) ? b : next++;
  return table;
}

}  // namespace detail

inline constexpr std::array<char32_t, 256> kByteToSymbol = detail::make_byte_table();

/// The printable symbol standing for a leading space.
inline constexpr char32_t kSpaceMarker = kByteToSymbol[0x20];

namespace detail {

inline constexpr unsigned kShiftedCount = 68;

constexpr std::array<std::uint8_t, kShiftedCount> make_shifted_bytes() {
  std::array<std::uint8_t, kShiftedCount> out{};
  unsigned i = 0;
  for (unsigned b = 0; b < 256; ++b) {
    if (!is_self_mapped(b)) out[i++] = static_cast<std::uint8_t>(b);
  }
  return out;
}

inline constexpr auto kShiftedBytes = make_shifted_bytes();

}  // namespace detail

inline constexpr std::optional<std::uint8_t> symbol_to_byte(char32_t symbol) {
  if (symbol < 256 && detail::is_self_mapped(static_cast<unsigned>(symbol))) {
    return static_cast<std::uint8_t>(symbol);
  }
  if (symbol >= 256 && symbol < 256 + detail::kShiftedCount) {
    return detail::kShiftedBytes[symbol - 256];
  }
  return std::nullopt;
}

/// UTF-8 of the symbol for one byte.
inline const std::string& byte_symbol(std::uint8_t b) {
  static const std::array<std::string, 256> symbols = [] {
    std::array<std::string, 256> out;
    for (unsigned i = 0; i < 256; ++i) out[i] = utf8::encode(kByteToSymbol[i]);
    return out;
  }();
  return symbols[b];
}

/// Maps every byte of `bytes` to its printable symbol (UTF-8 output).
inline std::string byte_remap(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) out += byte_symbol(b);
  return out;
}

/// Inverse of byte_remap; nullopt when `symbols` holds a code point outside
/// the alphabet or is not valid UTF-8.
inline std::optional<std::string> try_inverse_byte_remap(std::string_view symbols) {
  std::string out;
  out.reserve(symbols.size());
  std::size_t pos = 0;
  while (pos < symbols.size()) {
    std::size_t n = 0;
    const auto cp = utf8::decode_at(symbols, pos, &n);
    if (!cp) return std::nullopt;
    const auto b = symbol_to_byte(*cp);
    if (!b) return std::nullopt;
    out.push_back(static_cast<char>(*b));
    pos += n;
  }
  return out;
}

inline std::string inverse_byte_remap(std::string_view symbols) {
  auto out = try_inverse_byte_remap(symbols);
  if (!out) throw ArgumentError("symbol sequence is outside the byte alphabet");
  return *std::move(out);
}

}  // namespace lextok
