#include "lextok/trainer.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <queue>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "lextok/added_tokens.hpp"
#include "lextok/byte_remap.hpp"
#include "lextok/error.hpp"
#include "lextok/serialization.hpp"
#include "lextok/utf8.hpp"

namespace lextok {

namespace {

using PairKey = std::uint64_t;

PairKey key_of(std::uint32_t left, std::uint32_t right) {
  return (static_cast<std::uint64_t>(left) << 32) | right;
}
std::uint32_t left_of(PairKey k) { return static_cast<std::uint32_t>(k >> 32); }
std::uint32_t right_of(PairKey k) { return static_cast<std::uint32_t>(k & 0xFFFFFFFFu); }

struct Word {
  std::vector<std::uint32_t> symbols;
  std::uint64_t freq;
};

// Replaces every non-overlapping (left, right) occurrence, scanning left to
// right.
void merge_word(std::vector<std::uint32_t>& symbols, std::uint32_t left, std::uint32_t right,
                std::uint32_t merged) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < symbols.size();) {
    if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
      symbols[out++] = merged;
      i += 2;
    } else {
      symbols[out++] = symbols[i++];
    }
  }
  symbols.resize(out);
}

unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

}  // namespace

std::vector<std::string> initial_symbols(std::string_view word) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const std::size_t len = std::max<std::size_t>(1, utf8::sequence_length(static_cast<unsigned char>(word[pos])));
    const std::size_t take = std::min(len, word.size() - pos);
    out.emplace_back(word.substr(pos, take));
    pos += take;
  }
  return out;
}

PairStats count_pairs(const WordCounts& words) {
  PairStats stats;
  for (const auto& [word, freq] : words) {
    const auto symbols = initial_symbols(word);
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      stats.counts[{symbols[i], symbols[i + 1]}] += freq;
    }
  }
  return stats;
}

std::size_t token_char_length(std::string_view symbols) {
  const std::string bytes = inverse_byte_remap(symbols);
  std::string_view view = bytes;
  if (view.size() > 1 && view.front() == ' ') view.remove_prefix(1);
  return utf8::lenient_char_length(view);
}

std::optional<std::pair<TokenPair, std::uint64_t>> select_merge(const PairStats& stats,
                                                                std::optional<std::size_t> cap,
                                                                std::uint64_t min_frequency) {
  std::optional<std::pair<TokenPair, std::uint64_t>> best;
  // std::map iterates in (left, right) order, so the first maximum wins ties.
  for (const auto& [pair, count] : stats.counts) {
    if (count < min_frequency) continue;
    if (best && count <= best->second) continue;
    if (cap && token_char_length(pair.first + pair.second) > *cap) continue;
    best = {pair, count};
  }
  return best;
}

LearnedMerges learn_merges(const WordCounts& input, const MergeLearningOptions& options) {
  LearnedMerges result;
  if (options.max_new_tokens == 0) return result;

  std::vector<std::string> tokens;
  std::unordered_map<std::string, std::uint32_t> index;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = index.emplace(s, static_cast<std::uint32_t>(tokens.size()));
    if (inserted) tokens.push_back(s);
    return it->second;
  };

  std::vector<Word> words;
  words.reserve(input.size());
  for (const auto& [word, freq] : input) {
    Word w{{}, freq};
    for (const auto& s : initial_symbols(word)) w.symbols.push_back(intern(s));
    words.push_back(std::move(w));
  }

  std::unordered_map<PairKey, std::uint64_t> counts;
  std::unordered_map<PairKey, std::vector<std::uint32_t>> where;
  auto note = [&](PairKey k, std::uint32_t w) {
    auto& list = where[k];
    if (list.empty() || list.back() != w) list.push_back(w);
  };
  for (std::uint32_t w = 0; w < words.size(); ++w) {
    const auto& s = words[w].symbols;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const PairKey k = key_of(s[i], s[i + 1]);
      counts[k] += words[w].freq;
      note(k, w);
    }
  }

  struct Entry {
    std::uint64_t count;
    PairKey pair;
  };
  // Max-heap on count; on equal counts the smaller (left, right) strings
  // come first.
  auto lower_priority = [&tokens](const Entry& a, const Entry& b) {
    if (a.count != b.count) return a.count < b.count;
    return std::tie(tokens[left_of(a.pair)], tokens[right_of(a.pair)]) >
           std::tie(tokens[left_of(b.pair)], tokens[right_of(b.pair)]);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);
  for (const auto& [k, c] : counts) heap.push({c, k});

  std::unordered_set<PairKey> blocked;
  std::unordered_set<std::string> created;
  std::vector<std::uint32_t> stamp(words.size(), 0);
  std::uint32_t round = 0;

  while (result.new_tokens.size() < options.max_new_tokens && !heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    const auto found = counts.find(top.pair);
    const std::uint64_t current = found == counts.end() ? 0 : found->second;
    if (current != top.count) {
      if (current > 0) heap.push({current, top.pair});
      continue;
    }
    if (current < options.min_frequency) break;
    if (blocked.contains(top.pair)) continue;

    const std::uint32_t left = left_of(top.pair);
    const std::uint32_t right = right_of(top.pair);
    std::string merged = tokens[left] + tokens[right];
    if ((options.cap && token_char_length(merged) > *options.cap) || options.forbidden.contains(merged)) {
      blocked.insert(top.pair);
      continue;
    }

    result.merges.push_back({tokens[left], tokens[right], merged, result.merges.size()});
    if (!options.existing.contains(merged) && created.insert(merged).second) {
      result.new_tokens.push_back(merged);
    }
    const std::uint32_t merged_id = intern(merged);

    ++round;
    std::unordered_map<PairKey, std::int64_t> delta;
    std::vector<std::uint32_t> affected = std::move(where[top.pair]);
    where.erase(top.pair);
    for (const std::uint32_t w : affected) {
      if (stamp[w] == round) continue;
      stamp[w] = round;
      Word& word = words[w];
      const auto freq = static_cast<std::int64_t>(word.freq);
      for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
        delta[key_of(word.symbols[i], word.symbols[i + 1])] -= freq;
      }
      merge_word(word.symbols, left, right, merged_id);
      for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
        const PairKey k = key_of(word.symbols[i], word.symbols[i + 1]);
        delta[k] += freq;
        note(k, w);
      }
    }
    for (const auto& [k, d] : delta) {
      if (d == 0) continue;
      auto& c = counts[k];
      c = static_cast<std::uint64_t>(static_cast<std::int64_t>(c) + d);
      if (d > 0) heap.push({c, k});
      if (c == 0) counts.erase(k);
    }
  }
  return result;
}

WordCounts collect_words(const TokenizerModel& model, const std::vector<std::string>& documents,
                         unsigned threads) {
  threads = std::min<unsigned>(resolve_threads(threads),
                               static_cast<unsigned>(std::max<std::size_t>(1, documents.size())));
  std::vector<std::unordered_map<std::string, std::uint64_t>> shards(threads);
  std::vector<std::exception_ptr> errors(threads);

  auto work = [&](unsigned shard) {
    try {
      auto& counts = shards[shard];
      auto add_plain = [&](std::string_view text) {
        for (const Span& span : model.pre_tokenizer().split(text)) {
          counts[byte_remap(text.substr(span.begin, span.end - span.begin))] += 1;
        }
      };
      for (std::size_t d = shard; d < documents.size(); d += threads) {
        const std::string_view doc = documents[d];
        utf8::require_valid(doc);
        for (const TextSegment& raw : model.raw_matcher().split(doc)) {
          if (raw.token >= 0) continue;
          const std::string normalized =
              normalize(doc.substr(raw.begin, raw.end - raw.begin), model.normalization());
          const std::string_view view = normalized;
          for (const TextSegment& seg : model.normalized_matcher().split(view)) {
            if (seg.token < 0) add_plain(view.substr(seg.begin, seg.end - seg.begin));
          }
        }
      }
    } catch (...) {
      errors[shard] = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Summation is order independent, so the result does not depend on the
  // shard layout.
  WordCounts words;
  for (const auto& shard : shards) {
    for (const auto& [piece, count] : shard) words[piece] += count;
  }
  return words;
}

ModelParts base_model(const TrainerConfig& config) {
  ModelParts parts;
  parts.normalization = config.normalization;
  parts.pre_tokenizer = PreTokenizerConfig::from(config.normalization);
  for (const std::string& surface : config.special_tokens) {
    if (std::find(parts.vocab.begin(), parts.vocab.end(), surface) != parts.vocab.end()) continue;
    const auto id = static_cast<TokenId>(parts.vocab.size());
    parts.vocab.push_back(surface);
    AddedToken tok;
    tok.content = surface;
    tok.id = id;
    tok.normalized = false;
    tok.special = true;
    parts.added_tokens.push_back(tok);
    if (auto role = guess_special_role(surface); role && !parts.specials.contains(*role)) {
      parts.specials[*role] = id;
    }
  }
  for (unsigned b = 0; b < 256; ++b) {
    const std::string& symbol = byte_symbol(static_cast<std::uint8_t>(b));
    if (std::find(parts.vocab.begin(), parts.vocab.end(), symbol) != parts.vocab.end()) {
      throw TrainingError("special token '" + symbol + "' collides with a byte symbol");
    }
    parts.vocab.push_back(symbol);
  }
  return parts;
}

TokenizerModel inject_custom_tokens(const TokenizerModel& model, const TokenCatalog& catalog) {
  ModelParts parts = model.parts();
  std::unordered_map<std::string, TokenId> index;
  for (std::size_t id = 0; id < parts.vocab.size(); ++id) index.emplace(parts.vocab[id], static_cast<TokenId>(id));
  std::vector<bool> added(parts.vocab.size(), false);
  for (const auto& tok : parts.added_tokens) added[tok.id] = true;

  bool changed = false;
  for (const CatalogEntry& entry : catalog.entries) {
    const std::string& s = entry.surface;
    if (s.size() == 1 && unicode::is_whitespace(static_cast<unsigned char>(s[0]))) continue;
    AddedToken tok;
    tok.content = s;
    // A space variant carries its own left boundary; single-word matching
    // would reject it after any word character.
    tok.single_word = is_word_like(entry.category) && s.front() != ' ';
    if (auto it = index.find(s); it != index.end()) {
      // Already a token: a byte symbol with the same spelling becomes the
      // added token; anything else is left alone.
      if (added[it->second] || model.surface_bytes(it->second) != s) continue;
      tok.id = it->second;
      added[tok.id] = true;
    } else {
      tok.id = static_cast<TokenId>(parts.vocab.size());
      parts.vocab.push_back(s);
      added.push_back(true);
      index.emplace(s, tok.id);
    }
    parts.added_tokens.push_back(std::move(tok));
    changed = true;
  }
  if (!changed) return model;
  std::stable_sort(parts.added_tokens.begin(), parts.added_tokens.end(),
                   [](const AddedToken& a, const AddedToken& b) { return a.id < b.id; });
  parts.padding = derive_padding(parts);
  return TokenizerModel(std::move(parts));
}

namespace {

// Yields filler candidates in schedule order, without end.
class FillerGenerator {
 public:
  std::string next() {
    if (phase_ < 3) {
      static constexpr char kRunChars[] = {' ', '\n', '\t'};
      std::string s(run_length_, kRunChars[phase_]);
      if (++run_length_ > kMaxRun) {
        run_length_ = 2;
        ++phase_;
      }
      return s;
    }
    for (;;) {
      // Bits most significant first: 0 is '\n', 1 is ' ', so counting up
      // walks each length in byte order.
      std::string s(mixed_length_, '\n');
      for (std::size_t i = 0; i < mixed_length_; ++i) {
        if ((mixed_value_ >> (mixed_length_ - 1 - i)) & 1u) s[i] = ' ';
      }
      const bool uniform = mixed_value_ == 0 || mixed_value_ == (std::uint64_t{1} << mixed_length_) - 1;
      if (++mixed_value_ == (std::uint64_t{1} << mixed_length_)) {
        mixed_value_ = 0;
        ++mixed_length_;
      }
      if (!(uniform && s.size() <= kMaxRun)) return s;
    }
  }

 private:
  static constexpr std::size_t kMaxRun = 16;
  int phase_ = 0;
  std::size_t run_length_ = 2;
  std::size_t mixed_length_ = 2;
  std::uint64_t mixed_value_ = 0;
};

}  // namespace

std::vector<std::string> filler_schedule(std::size_t count) {
  FillerGenerator gen;
  std::vector<std::string> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(gen.next());
  return out;
}

TokenizerModel pad_to_power_of_two(const TokenizerModel& model, std::size_t target) {
  if (!std::has_single_bit(target)) {
    throw TrainingError("padding target " + std::to_string(target) + " is not a power of two");
  }
  if (target < model.size()) {
    throw TrainingError("padding target " + std::to_string(target) + " is smaller than the vocabulary (" +
                        std::to_string(model.size()) + ")");
  }
  if (target == model.size()) return model;

  ModelParts parts = model.parts();
  std::unordered_set<std::string> present;
  for (TokenId id = 0; id < model.size(); ++id) {
    present.insert(model.surface_bytes(id));
    present.insert(model.token(id));
  }
  FillerGenerator gen;
  while (parts.vocab.size() < target) {
    std::string s = gen.next();
    if (!present.insert(s).second) continue;
    AddedToken tok;
    tok.content = s;
    tok.id = static_cast<TokenId>(parts.vocab.size());
    parts.vocab.push_back(std::move(s));
    parts.added_tokens.push_back(std::move(tok));
  }
  parts.padding = derive_padding(parts);
  return TokenizerModel(std::move(parts));
}

TokenizerModel train(const std::vector<std::string>& documents, const TrainerConfig& config) {
  validate(config);
  const bool empty = std::all_of(documents.begin(), documents.end(),
                                 [](const std::string& d) { return d.empty(); });
  if (empty) throw TrainingError("corpus is empty");

  TokenizerModel model(base_model(config));
  CatalogConfig catalog_config = config.catalog;
  catalog_config.case_mode = config.normalization.case_mode;
  model = inject_custom_tokens(model, assemble_catalog(catalog_config));

  const std::size_t target = config.target_vocab_size;
  if (model.size() > target) {
    throw TrainingError("target vocabulary size " + std::to_string(target) +
                        " is below the minimum feasible size " + std::to_string(model.size()) +
                        " (specials, byte symbols and custom tokens); the smallest usable target is " +
                        std::to_string(std::bit_ceil(model.size())));
  }

  const WordCounts words = collect_words(model, documents, config.threads);

  MergeLearningOptions options;
  options.max_new_tokens = target - model.size();
  options.cap = config.max_token_chars;
  options.min_frequency = config.min_pair_frequency;
  for (TokenId id = 0; id < model.size(); ++id) {
    options.existing.insert(model.token(id));
    if (model.is_added(id)) options.forbidden.insert(model.token(id));
  }
  LearnedMerges learned = learn_merges(words, options);

  ModelParts parts = model.parts();
  for (auto& token : learned.new_tokens) parts.vocab.push_back(std::move(token));
  parts.merges = std::move(learned.merges);
  parts.padding = derive_padding(parts);
  return pad_to_power_of_two(TokenizerModel(std::move(parts)), target);
}

}  // namespace lextok
