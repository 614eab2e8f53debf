#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lextok/catalog.hpp"
#include "lextok/model.hpp"
#include "lextok/normalization.hpp"

namespace lextok {

struct TrainerConfig {
  std::size_t target_vocab_size = 65536;     // power of two
  std::optional<std::size_t> max_token_chars;  // learned-token cap, >= 2
  std::uint64_t min_pair_frequency = 2;
  CatalogConfig catalog;
  NormalizationConfig normalization;
  std::vector<std::string> special_tokens;  // surfaces; roles recognized by spelling
  unsigned threads = 0;                     // 0: hardware concurrency

  friend bool operator==(const TrainerConfig&, const TrainerConfig&) = default;
};

/// Names accepted by trainer_preset.
inline constexpr std::string_view kPresetNames[] = {
    "char-4k", "char-8k", "char-16k", "domain-64k", "domain-128k-cased", "domain-128k-uncased",
};

/// Throws ArgumentError for an unknown name.
TrainerConfig trainer_preset(std::string_view name);

/// "key = value" lines, '#' comments. A `preset` key must come first when
/// present; later keys override it. Relative `citation_file` paths resolve
/// against `base_dir`. Throws ParseError naming the line.
TrainerConfig parse_trainer_config(std::string_view text, std::string_view source,
                                   const std::filesystem::path& base_dir = {});
TrainerConfig load_trainer_config(const std::filesystem::path& path);

/// Throws TrainingError when the config is unusable.
void validate(const TrainerConfig& config);

/// Pre-tokenized pieces (byte-remapped symbol strings) and their frequencies.
/// Ordered so iteration, and therefore training, is deterministic.
using WordCounts = std::map<std::string, std::uint64_t>;

using TokenPair = std::pair<std::string, std::string>;

struct PairStats {
  std::map<TokenPair, std::uint64_t> counts;
  friend bool operator==(const PairStats&, const PairStats&) = default;
};

/// Splits a symbol string into its initial symbols (one per UTF-8 character).
std::vector<std::string> initial_symbols(std::string_view word);

/// Adjacent-pair counts weighted by word frequency, over initial symbols.
PairStats count_pairs(const WordCounts& words);

/// Capped length of a token given as byte-remapped symbols: decoded
/// characters with one leading space excluded.
std::size_t token_char_length(std::string_view symbols);

/// Highest-count pair, ties broken by the smaller (left, right) strings.
/// Pairs whose merged length exceeds `cap` or whose count is below
/// `min_frequency` are not eligible.
std::optional<std::pair<TokenPair, std::uint64_t>> select_merge(const PairStats& stats,
                                                                std::optional<std::size_t> cap,
                                                                std::uint64_t min_frequency = 2);

struct MergeLearningOptions {
  std::size_t max_new_tokens = 0;
  std::optional<std::size_t> cap;
  std::uint64_t min_frequency = 2;
  /// Strings a merge may not produce (added-token contents).
  std::unordered_set<std::string> forbidden;
  /// Vocabulary strings that already exist; producing one adds a merge but
  /// no new token.
  std::unordered_set<std::string> existing;
};

struct LearnedMerges {
  std::vector<MergeRule> merges;        // ranks from 0
  std::vector<std::string> new_tokens;  // creation order
};

/// Merge learning with incremental pair counts. Stops when `max_new_tokens`
/// tokens were created or no pair is eligible.
LearnedMerges learn_merges(const WordCounts& words, const MergeLearningOptions& options);

/// Normalizes, scans added tokens and pre-tokenizes each document the way the
/// encoder of `model` does, and counts the resulting pieces. Text covered by
/// added tokens is left out. Counting is sharded over `threads`.
WordCounts collect_words(const TokenizerModel& model, const std::vector<std::string>& documents,
                         unsigned threads = 0);

/// Specials and the 256 byte symbols; no merges.
ModelParts base_model(const TrainerConfig& config);

/// Adds every catalog surface missing from the model as an added token.
/// Word-like categories match as single words. Single-byte whitespace surfaces
/// are skipped so a lone space can still adhere to the next word. Idempotent.
TokenizerModel inject_custom_tokens(const TokenizerModel& model, const TokenCatalog& catalog);

/// Filler surfaces in padding order: space, newline and tab runs of length
/// 2..16, then strings over {space, newline} by length and byte order.
std::vector<std::string> filler_schedule(std::size_t count_hint);

/// Appends fillers absent from the vocabulary until the size equals
/// `target`. Throws TrainingError if `target` is not a power of two or is
/// smaller than the current size.
TokenizerModel pad_to_power_of_two(const TokenizerModel& model, std::size_t target);

/// Full pipeline: base model, catalog injection, merge learning, padding.
/// Throws TrainingError for an empty corpus or a target below the minimum
/// feasible size.
TokenizerModel train(const std::vector<std::string>& documents, const TrainerConfig& config);

}  // namespace lextok
