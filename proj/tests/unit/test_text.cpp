#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "lextok/byte_remap.hpp"
#include "lextok/error.hpp"
#include "lextok/normalization.hpp"
#include "lextok/pretokenizer.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lextok;
using testing_support::fixture;
using testing_support::read_file;

namespace {

const NormalizationConfig kCased{UnicodeForm::nfkc, CaseMode::cased, true};
const NormalizationConfig kUncased{UnicodeForm::nfkc, CaseMode::uncased, true};

std::vector<std::string> texts_of(std::string_view text, const std::vector<Span>& spans) {
  std::vector<std::string> out;
  for (const Span& s : spans) out.emplace_back(text.substr(s.begin, s.end - s.begin));
  return out;
}

}  // namespace

TEST(Normalize, SpecExamples) {
  EXPECT_EQ(normalize("\xEF\xAC\x81le", kCased), "file");
  EXPECT_EQ(normalize("ABC", kUncased), "abc");
  EXPECT_EQ(normalize("abc", kCased), "abc");
  EXPECT_EQ(normalize("ABC", kCased), "ABC");
  EXPECT_EQ(normalize("", kUncased), "");
}

TEST(Normalize, CompatibilityAndCase) {
  EXPECT_EQ(normalize("½ ² Ⅳ", kCased), "1⁄2 2 IV");
  EXPECT_EQ(normalize("Ｆｅｄ．", kCased), "Fed.");
  EXPECT_EQ(normalize("e\xCC\x81", kCased), "é");
  // No final-sigma context rule.
  EXPECT_EQ(normalize("ΟΔΟΣ", kUncased), "οδοσ");
  EXPECT_EQ(normalize("İ", kUncased), "i\xCC\x87");
  const NormalizationConfig off{UnicodeForm::none, CaseMode::cased, true};
  EXPECT_EQ(normalize("\xEF\xAC\x81", off), "\xEF\xAC\x81");
}

TEST(Normalize, RejectsMalformedUtf8) {
  try {
    normalize(std::string("ab\xC3", 3), kCased);
    FAIL() << "expected EncodingError";
  } catch (const EncodingError& e) {
    EXPECT_EQ(e.byte_offset(), 2u);
  }
  EXPECT_THROW(normalize("\xED\xA0\x80", kCased), EncodingError);  // surrogate
  EXPECT_THROW(normalize("\xC0\xAF", kCased), EncodingError);      // overlong
}

TEST(Normalize, IdempotentOnRandomText) {
  std::mt19937 rng(7);
  for (int i = 0; i < 3000; ++i) {
    const std::string s = testing_support::random_unicode(rng, 40);
    const std::string once = normalize(s, kCased);
    ASSERT_EQ(normalize(once, kCased), once) << s;
  }
}

// Lowercasing after NFKC can leave a decomposed sequence, as the reference
// normalizer does, so uncased normalization is not idempotent.
TEST(Normalize, UncasedLowercasesAfterComposition) {
  EXPECT_EQ(normalize("\u03AB\u0301", kUncased), "\u03CB\u0301");
  EXPECT_EQ(normalize("\u03CB\u0301", kUncased), "\u03B0");
}

TEST(ByteRemap, MatchesReferenceFixture) {
  std::istringstream in(read_file(fixture("byte_table.txt")));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    unsigned b = 0;
    unsigned long cp = 0;
    std::istringstream(line) >> b >> cp;
    EXPECT_EQ(kByteToSymbol[b], cp) << "byte " << b;
    ++rows;
  }
  EXPECT_EQ(rows, 256);
  EXPECT_EQ(kByteToSymbol, oracle::gpt2_byte_table());
}

TEST(ByteRemap, Examples) {
  EXPECT_EQ(byte_remap("A"), "A");
  EXPECT_EQ(byte_remap(" "), "Ġ");
  EXPECT_EQ(kSpaceMarker, U'Ġ');
  EXPECT_EQ(byte_remap("\n"), "Ċ");
}

TEST(ByteRemap, AllBytesRoundTrip) {
  std::string all;
  for (int b = 0; b < 256; ++b) all.push_back(static_cast<char>(b));
  const std::string symbols = byte_remap(all);
  EXPECT_EQ(inverse_byte_remap(symbols), all);
  EXPECT_EQ(utf8::count_chars(symbols), 256u);
  EXPECT_FALSE(try_inverse_byte_remap("\xE2\x82\xAC").has_value());  // U+20AC is outside
  EXPECT_THROW(inverse_byte_remap("€"), ArgumentError);
}

TEST(PreTokenize, SpecExamples) {
  const auto pieces = pretokenize("The court", kCased);
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_EQ(pieces[0].symbols, "The");
  EXPECT_EQ(pieces[1].symbols, "Ġcourt");
  EXPECT_EQ(pieces[1].char_length, 6u);
  EXPECT_EQ(pieces[1].span, (Span{3, 9}));
  EXPECT_TRUE(pretokenize("", kCased).empty());
}

TEST(PreTokenize, GoldenSplits) {
  const auto cases = nlohmann::json::parse(read_file(fixture("pretok_golden.json")));
  ASSERT_GE(cases.size(), 20u);
  for (const auto& c : cases) {
    const std::string text = c["text"];
    const auto adhering = c["space_adhering"].get<std::vector<std::string>>();
    const auto isolated = c["isolated_runs"].get<std::vector<std::string>>();
    EXPECT_EQ(texts_of(text, split_space_adhering(text)), adhering) << text;
    EXPECT_EQ(texts_of(text, split_with_regex(text, kSpaceAdheringPattern)), adhering) << text;
    EXPECT_EQ(texts_of(text, split_isolated_runs(text)), isolated) << text;
    EXPECT_EQ(texts_of(text, split_with_regex(text, kIsolatedRunsPattern)), isolated) << text;
  }
}

TEST(PreTokenize, HandWrittenMatchesRegexOnRandomText) {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string s = normalize(testing_support::random_unicode(rng, 30), kCased);
    ASSERT_EQ(split_space_adhering(s), split_with_regex(s, kSpaceAdheringPattern)) << s;
    ASSERT_EQ(split_isolated_runs(s), split_with_regex(s, kIsolatedRunsPattern)) << s;
  }
}

TEST(PreTokenize, Lossless) {
  std::mt19937 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const std::string raw = testing_support::random_unicode(rng, 30);
    for (auto cfg : {kCased, kUncased, NormalizationConfig{UnicodeForm::nfkc, CaseMode::cased, false}}) {
      const std::string n = normalize(raw, cfg);
      std::string symbols;
      std::size_t expect_begin = 0;
      for (const Piece& p : pretokenize(n, cfg)) {
        ASSERT_EQ(p.span.begin, expect_begin);
        expect_begin = p.span.end;
        symbols += p.symbols;
      }
      ASSERT_EQ(expect_begin, n.size());
      ASSERT_EQ(inverse_byte_remap(symbols), n);
    }
  }
}

TEST(PreTokenize, NoSpacePrefixIsolatesSpaces) {
  const NormalizationConfig cfg{UnicodeForm::nfkc, CaseMode::cased, false};
  const auto pieces = pretokenize("The court", cfg);
  ASSERT_EQ(pieces.size(), 3u);
  EXPECT_EQ(pieces[1].symbols, "Ġ");
}

TEST(Utf8, LenientLength) {
  EXPECT_EQ(utf8::lenient_char_length("abc"), 3u);
  EXPECT_EQ(utf8::lenient_char_length("é"), 1u);
  EXPECT_EQ(utf8::lenient_char_length("\xC3"), 1u);
  EXPECT_EQ(utf8::lenient_char_length("\xA9\xA9"), 2u);
  EXPECT_EQ(utf8::to_valid_lossy("a\xC3"), "a\xEF\xBF\xBD");
}
