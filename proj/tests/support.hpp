#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lextok/byte_remap.hpp"
#include "lextok/model.hpp"
#include "lextok/trainer.hpp"
#include "lextok/utf8.hpp"

namespace testing_support {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(LEXTOK_FIXTURE_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline std::vector<std::string> fixture_documents() {
  std::vector<std::string> docs;
  for (const char* name : {"filing.txt", "opinion.txt", "statute.txt"}) {
    docs.push_back(read_file(fixture(std::string("corpus/") + name)));
  }
  return docs;
}

// 256 byte symbols plus four merges: (t,h) (th,e) (Ġ,the) (Ġ,c). No specials.
inline lextok::ModelParts toy_parts() {
  lextok::ModelParts parts;
  parts.normalization = {lextok::UnicodeForm::nfkc, lextok::CaseMode::cased, true};
  parts.pre_tokenizer = lextok::PreTokenizerConfig::from(parts.normalization);
  for (unsigned b = 0; b < 256; ++b) parts.vocab.push_back(lextok::byte_symbol(static_cast<std::uint8_t>(b)));
  const std::string G = lextok::byte_symbol(' ');
  const std::vector<std::pair<std::string, std::string>> merges = {{"t", "h"}, {"th", "e"}, {G, "the"}, {G, "c"}};
  for (const auto& [l, r] : merges) {
    parts.merges.push_back({l, r, l + r, parts.merges.size()});
    parts.vocab.push_back(l + r);
  }
  parts.padding = {parts.vocab.size(), 0};
  return parts;
}

inline lextok::TrainerConfig small_config(std::size_t target = 512) {
  lextok::TrainerConfig c = lextok::trainer_preset("domain-64k");
  c.target_vocab_size = target;
  c.catalog.categories = {};
  c.threads = 2;
  return c;
}

// Random text mixing ASCII, Latin-1, Greek, CJK, emoji, combining marks,
// compatibility characters and assorted whitespace.
inline std::string random_unicode(std::mt19937& rng, std::size_t max_chars) {
  static const std::vector<std::pair<char32_t, char32_t>> ranges = {
      {0x20, 0x7E},     {0x20, 0x7E},     {0x20, 0x7E},   {0x09, 0x0D},   {0xA0, 0xFF},
      {0x100, 0x17F},   {0x391, 0x3C9},   {0x300, 0x36F}, {0x4E00, 0x4E80}, {0x1F600, 0x1F64F},
      {0xFB00, 0xFB06}, {0x2000, 0x206F}, {0x2150, 0x218B}, {0x2460, 0x24FF}, {0xFF01, 0xFF5E},
      {0x1E00, 0x1EFF}, {0x0400, 0x04FF}, {0x0600, 0x06FF}, {0xAC00, 0xAC40}, {0x3000, 0x303F},
  };
  std::string out;
  const std::size_t n = rng() % (max_chars + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [lo, hi] = ranges[rng() % ranges.size()];
    char32_t cp = lo + static_cast<char32_t>(rng() % (hi - lo + 1));
    if (cp >= 0xD800 && cp <= 0xDFFF) cp = 'x';
    lextok::utf8::append(out, cp);
  }
  return out;
}

}  // namespace testing_support
