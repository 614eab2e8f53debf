#include <gtest/gtest.h>
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <random>

#include "lextok/error.hpp"
#include "lextok/runtime.hpp"
#include "lextok/serialization.hpp"
#include "lextok/trainer.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lextok;

namespace {

const TokenizerModel& trained(CaseMode mode) {
  static const auto make = [](CaseMode m) {
    auto cfg = trainer_preset(m == CaseMode::cased ? "domain-128k-cased" : "domain-128k-uncased");
    cfg.target_vocab_size = 8192;
    cfg.threads = 2;
    return train(testing_support::fixture_documents(), cfg);
  };
  static const TokenizerModel cased = make(CaseMode::cased);
  static const TokenizerModel uncased = make(CaseMode::uncased);
  return mode == CaseMode::cased ? cased : uncased;
}

TokenId id_of(const TokenizerModel& m, const std::string& token) {
  auto id = m.find(token);
  EXPECT_TRUE(id.has_value()) << token;
  return id.value_or(0);
}

}  // namespace

TEST(Encode, ToyModel) {
  const TokenizerModel m(testing_support::toy_parts());
  const auto r = encode(m, "the cat");
  EXPECT_EQ(r.ids, (std::vector<TokenId>{id_of(m, "the"), id_of(m, "Ġc"), 'a', 't'}));
  EXPECT_EQ(r.surfaces, (std::vector<std::string>{"the", " c", "a", "t"}));
  EXPECT_EQ(r.offsets, (std::vector<CharRange>{{0, 3}, {3, 5}, {5, 6}, {6, 7}}));
  EXPECT_EQ(r.normalized, "the cat");
  EXPECT_EQ(encode_ids(m, "the cat"), r.ids);

  // Merges apply lowest rank first: " the" becomes one token, "The" does not merge.
  EXPECT_EQ(encode(m, "The the").surfaces, (std::vector<std::string>{"T", "h", "e", " the"}));
}

TEST(Encode, EmptyInput) {
  const TokenizerModel m(testing_support::toy_parts());
  const auto r = encode(m, "");
  EXPECT_TRUE(r.ids.empty());
  EXPECT_TRUE(r.surfaces.empty());
  EXPECT_TRUE(r.offsets.empty());
  EXPECT_EQ(decode(m, std::vector<TokenId>{}), "");
}

TEST(Encode, SplitCharacterOffsets) {
  const TokenizerModel m(testing_support::toy_parts());
  const auto r = encode(m, "é!");
  ASSERT_EQ(r.ids.size(), 3u);
  EXPECT_EQ(r.surfaces[0], "\xEF\xBF\xBD");
  EXPECT_EQ(r.offsets, (std::vector<CharRange>{{0, 1}, {1, 1}, {1, 2}}));
  EXPECT_EQ(decode(m, r.ids), "é!");
}

TEST(Encode, RejectsMalformedInput) {
  const TokenizerModel m(testing_support::toy_parts());
  EXPECT_THROW(encode(m, "\xFF"), EncodingError);
}

TEST(Decode, Errors) {
  const TokenizerModel m(testing_support::toy_parts());
  const std::vector<TokenId> ids = {1, 999999999};
  try {
    decode(m, ids);
    FAIL() << "expected ArgumentError";
  } catch (const ArgumentError& e) {
    EXPECT_NE(std::string(e.what()).find("999999999"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("position 1"), std::string::npos) << e.what();
  }
  const std::vector<TokenId> half = {0xC3};
  EXPECT_EQ(decode(m, half), "\xEF\xBF\xBD");
}

TEST(Decode, SpecExamples) {
  const auto& cased = trained(CaseMode::cased);
  const std::string cite = "11 U.S.C. § 362(a)";
  EXPECT_EQ(decode(cased, encode_ids(cased, cite)), cite);
  const auto& uncased = trained(CaseMode::uncased);
  EXPECT_EQ(decode(uncased, encode_ids(uncased, "ABC")), "abc");
}

TEST(Decode, SkipSpecials) {
  const auto& m = trained(CaseMode::cased);
  const auto ids = encode_for_task(m, "court", Task::causal);
  EXPECT_EQ(decode(m, ids), "<|start|>court<|end|>");
  EXPECT_EQ(decode(m, ids, {.skip_specials = true}), "court");
}

TEST(Encode, RoundTripAndOffsetsOnRandomText) {
  std::mt19937 rng(99);
  for (CaseMode mode : {CaseMode::cased, CaseMode::uncased}) {
    const auto& m = trained(mode);
    for (int i = 0; i < 1500; ++i) {
      const std::string s = testing_support::random_unicode(rng, 50);
      const auto r = encode(m, s);
      const std::string n = normalize(s, m.normalization());
      ASSERT_EQ(r.normalized, n);
      ASSERT_EQ(decode(m, r.ids), n) << s;
      ASSERT_EQ(r.ids.size(), r.surfaces.size());
      ASSERT_EQ(r.ids.size(), r.offsets.size());
      std::size_t at = 0;
      for (const auto& o : r.offsets) {
        ASSERT_EQ(o.start, at);
        ASSERT_LE(o.start, o.end);
        at = o.end;
      }
      ASSERT_EQ(at, utf8::count_chars(n));
    }
  }
}

TEST(Encode, FixtureDocumentsRoundTrip) {
  for (CaseMode mode : {CaseMode::cased, CaseMode::uncased}) {
    const auto& m = trained(mode);
    for (const auto& doc : testing_support::fixture_documents()) {
      EXPECT_EQ(decode(m, encode_ids(m, doc)), normalize(doc, m.normalization()));
    }
  }
}

TEST(Encode, MatchesNaiveMergeOracle) {
  const auto& m = trained(CaseMode::cased);
  std::map<oracle::Pair, std::size_t> ranks;
  for (const auto& rule : m.parts().merges) ranks.emplace(oracle::Pair{rule.left, rule.right}, rule.rank);
  std::mt19937 rng(5);
  const auto docs = testing_support::fixture_documents();
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    if (i % 2 == 0) {
      s = testing_support::random_unicode(rng, 20);
    } else {
      const auto& doc = docs[rng() % docs.size()];
      const std::size_t at = rng() % doc.size();
      s = utf8::to_valid_lossy(doc.substr(at, 1 + rng() % 40));
    }
    const std::string n = normalize(s, m.normalization());
    for (const Piece& p : pretokenize(n, m.normalization())) {
      const std::string bytes = n.substr(p.span.begin, p.span.end - p.span.begin);
      std::vector<std::string> ours;
      for (TokenId id : merge_piece(m, bytes)) ours.push_back(m.token(id));
      ASSERT_EQ(ours, oracle::naive_encode(oracle::byte_symbols(bytes), ranks)) << bytes;
      ++checked;
    }
  }
  EXPECT_GT(checked, 10000);
}

TEST(Encode, CatalogSurfacesAreAtomic) {
  const auto& m = trained(CaseMode::cased);
  int n = 0;
  for (const auto& tok : m.parts().added_tokens) {
    if (tok.special || tok.id >= m.parts().padding.unpadded_size) continue;
    ASSERT_EQ(encode_ids(m, tok.content), (std::vector<TokenId>{tok.id})) << tok.content;
    ++n;
  }
  EXPECT_GT(n, 3000);
  EXPECT_EQ(encode_ids(m, "1776").size(), 1u);
  EXPECT_EQ(encode(m, "in 1776").surfaces.back(), " 1776");
  EXPECT_EQ(encode_ids(m, "(iv)").size(), 1u);
  EXPECT_EQ(encode_ids(m, "U.S.C.").size(), 1u);
}

TEST(AddedTokens, MatchingRules) {
  auto parts = testing_support::toy_parts();
  auto add = [&](const std::string& content, bool single_word, bool lstrip, bool rstrip, bool normalized, bool special) {
    AddedToken t{content, static_cast<TokenId>(parts.vocab.size()), single_word, lstrip, rstrip, normalized, special};
    parts.vocab.push_back(content);
    parts.added_tokens.push_back(t);
    return t.id;
  };
  const TokenId iv = add("iv", true, false, false, true, false);
  const TokenId mask = add("<mask>", false, true, false, false, true);
  const TokenId end = add("<end>", false, false, true, false, true);
  const TokenId abc = add("abc", false, false, false, true, false);
  const TokenId abcd = add("abcd", false, false, false, true, false);
  parts.specials[SpecialRole::mask] = mask;
  parts.padding = {parts.vocab.size(), 0};
  const TokenizerModel m(parts);

  EXPECT_EQ(encode_ids(m, "iv"), (std::vector<TokenId>{iv}));
  EXPECT_EQ(encode_ids(m, "(iv)"), (std::vector<TokenId>{'(', iv, ')'}));
  EXPECT_EQ(encode_ids(m, "vivid").size(), 5u);
  EXPECT_EQ(encode_ids(m, "a <mask>"), (std::vector<TokenId>{'a', mask}));
  EXPECT_EQ(encode_ids(m, "<end>  b"), (std::vector<TokenId>{end, 'b'}));
  EXPECT_EQ(encode_ids(m, "xabcde"), (std::vector<TokenId>{'x', abcd, 'e'}));
  EXPECT_EQ(encode_ids(m, "abc"), (std::vector<TokenId>{abc}));
  // Normalized tokens match after NFKC; raw specials only on the input as given.
  EXPECT_EQ(encode_ids(m, "ａｂｃ"), (std::vector<TokenId>{abc}));
  const auto wide = encode_ids(m, "＜mask＞");
  EXPECT_EQ(std::count(wide.begin(), wide.end(), mask), 0);
  EXPECT_TRUE(m.is_special(mask));
  EXPECT_FALSE(m.is_special(abc));
}

TEST(Task, Wrapping) {
  const auto& m = trained(CaseMode::cased);
  EXPECT_EQ(encode_for_task(m, "hi", Task::causal).size(), encode_ids(m, "hi").size() + 2);
  EXPECT_EQ(encode_for_task(m, "", Task::masked),
            (std::vector<TokenId>{*m.special(SpecialRole::classifier), *m.special(SpecialRole::separator)}));
  const auto causal = encode_for_task(m, "hi", Task::causal);
  EXPECT_EQ(causal.front(), *m.special(SpecialRole::start));
  EXPECT_EQ(causal.back(), *m.special(SpecialRole::end));
  const TokenizerModel toy(testing_support::toy_parts());
  try {
    encode_for_task(toy, "hi", Task::causal);
    FAIL() << "expected ArgumentError";
  } catch (const ArgumentError& e) {
    EXPECT_NE(std::string(e.what()).find("start"), std::string::npos);
  }
}

TEST(Specials, DefaultInventory) {
  const auto& m = trained(CaseMode::cased);
  for (std::size_t i = 0; i < std::size(kAllRoles); ++i) {
    const auto id = m.special(kAllRoles[i]);
    ASSERT_TRUE(id.has_value());
    EXPECT_EQ(*id, i);
    EXPECT_EQ(m.token(*id), default_special_surface(kAllRoles[i]));
  }
  EXPECT_EQ(guess_special_role("[CLS]"), SpecialRole::classifier);
  EXPECT_EQ(guess_special_role("<s>"), SpecialRole::start);
  EXPECT_FALSE(guess_special_role("court").has_value());
}

TEST(VocabReport, Partition) {
  for (CaseMode mode : {CaseMode::cased, CaseMode::uncased}) {
    const auto& m = trained(mode);
    const auto r = vocab_report(m);
    std::size_t sum = 0;
    for (auto c : r.by_length) sum += c;
    EXPECT_EQ(sum, r.size);
    EXPECT_EQ(r.size, 8192u);
    EXPECT_EQ(r.specials, 7u);
    EXPECT_LE(r.longest, r.longest_overall);
  }
  auto cfg = trainer_preset("char-4k");
  cfg.target_vocab_size = 1024;
  EXPECT_LE(vocab_report(train(testing_support::fixture_documents(), cfg)).longest, 3u);
  EXPECT_EQ(display_length(trained(CaseMode::cased), *trained(CaseMode::cased).find("Ġthe")), 3u);
}

TEST(Serialization, RoundTripAndDeterminism) {
  const TokenizerModel toy(testing_support::toy_parts());
  EXPECT_EQ(from_json(to_json(toy)), toy);
  for (CaseMode mode : {CaseMode::cased, CaseMode::uncased}) {
    const auto& m = trained(mode);
    const std::string json = to_json(m);
    EXPECT_EQ(to_json(m), json);
    const auto back = from_json(json);
    EXPECT_EQ(back, m);
    EXPECT_EQ(to_json(back), json);
  }
  const auto path = std::filesystem::temp_directory_path() / ("lextok_roundtrip_" + std::to_string(::getpid()) + ".json");
  save(trained(CaseMode::cased), path);
  EXPECT_EQ(load(path), trained(CaseMode::cased));
  std::filesystem::remove(path);
  EXPECT_THROW(load("/nonexistent/tokenizer.json"), LoadError);
}

TEST(Serialization, Layout) {
  const auto j = nlohmann::ordered_json::parse(to_json(trained(CaseMode::uncased)));
  EXPECT_EQ(j["model"]["type"], "BPE");
  EXPECT_TRUE(j["model"]["merges"][0].is_string());
  EXPECT_EQ(j["normalizer"]["type"], "Sequence");
  EXPECT_EQ(j["pre_tokenizer"]["type"], "ByteLevel");
  EXPECT_EQ(j["decoder"]["type"], "ByteLevel");
  EXPECT_EQ(j["added_tokens"][0]["content"], "<|start|>");
  EXPECT_EQ(j["added_tokens"][0]["special"], true);
}

TEST(Serialization, LoadErrors) {
  const std::string good = to_json(TokenizerModel(testing_support::toy_parts()));
  auto mutate = [&](auto f) {
    auto j = nlohmann::ordered_json::parse(good);
    f(j);
    return j.dump();
  };
  EXPECT_THROW(from_json(mutate([](auto& j) { j["model"]["merges"].push_back("zz qq"); })), LoadError);
  EXPECT_THROW(from_json(mutate([](auto& j) { j["model"]["type"] = "WordPiece"; })), LoadError);
  EXPECT_THROW(from_json(mutate([](auto& j) { j["model"]["vocab"]["dup"] = 5; })), LoadError);
  EXPECT_THROW(from_json(mutate([](auto& j) { j["model"]["vocab"]["gap"] = 100000; })), LoadError);
  EXPECT_THROW(from_json(mutate([](auto& j) { j["model"]["dropout"] = 0.1; })), LoadError);
  EXPECT_THROW(from_json("{not json"), LoadError);
  EXPECT_THROW(from_json("[]"), LoadError);

  // Two-element array merges are accepted.
  const auto arrays = mutate([](auto& j) {
    auto merges = nlohmann::ordered_json::array();
    for (const auto& m : j["model"]["merges"]) {
      const std::string s = m;
      merges.push_back({s.substr(0, s.find(' ')), s.substr(s.find(' ') + 1)});
    }
    j["model"]["merges"] = merges;
  });
  EXPECT_EQ(from_json(arrays), TokenizerModel(testing_support::toy_parts()));
}

TEST(Serialization, PaddingIsRederived) {
  const auto& m = trained(CaseMode::cased);
  EXPECT_GT(m.parts().padding.filler_count, 0u);
  EXPECT_EQ(derive_padding(m.parts()), m.parts().padding);
  EXPECT_EQ(from_json(to_json(m)).parts().padding, m.parts().padding);
}

TEST(Model, InvariantViolations) {
  auto parts = testing_support::toy_parts();
  parts.vocab.push_back("the");
  EXPECT_THROW(TokenizerModel{parts}, ModelError);
  parts = testing_support::toy_parts();
  parts.merges[1].rank = 7;
  EXPECT_THROW(TokenizerModel{parts}, ModelError);
  parts = testing_support::toy_parts();
  parts.specials[SpecialRole::pad] = 100000;
  EXPECT_THROW(TokenizerModel{parts}, ModelError);
}
