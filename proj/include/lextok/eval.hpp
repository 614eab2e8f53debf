#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lextok/model.hpp"

namespace lextok {

struct Document {
  std::string id;
  std::string text;
  std::size_t char_count = 0;  // scalar values of the raw text
};

struct Corpus {
  std::string name;
  std::vector<Document> documents;
  std::size_t char_count = 0;
};

/// A directory of .txt files (recursive, sorted by relative path) or a
/// line-delimited JSON records file whose objects carry a "text" string and
/// optionally an "id". Throws Error for unreadable paths and ParseError for
/// malformed records.
Corpus ingest_corpus(const std::filesystem::path& path);

/// Builds a corpus from in-memory texts; ids are their indices.
Corpus make_corpus(std::string name, const std::vector<std::string>& texts);

/// Exact non-negative fraction.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// Decimal rendering rounded half up, computed in integers.
  std::string format(int decimals) const;
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct NamedModel {
  std::string name;
  std::shared_ptr<const TokenizerModel> model;
};

/// Body tokens of one document (no task wrappers).
std::size_t count_tokens(const TokenizerModel& model, std::string_view text);

struct TpcCell {
  std::string model;
  std::string corpus;
  std::uint64_t tokens = 0;
  std::uint64_t chars = 0;
  Ratio tpc() const { return {tokens, chars}; }
};

/// tokens / raw characters. Documents are encoded in parallel and summed.
/// Throws ArgumentError when the corpus has no characters.
TpcCell tokens_per_character(const NamedModel& model, const Corpus& corpus, unsigned threads = 0);

/// One cell per (model, corpus), models outermost.
std::vector<TpcCell> total_token_counts(const std::vector<NamedModel>& models,
                                        const std::vector<Corpus>& corpora, unsigned threads = 0);

struct Term {
  std::string domain;
  std::string text;
};

/// "domain<TAB>term" lines; blank lines and lines starting with '#' skipped.
std::vector<Term> parse_terms(std::string_view content, std::string_view source);
std::vector<Term> load_terms(const std::filesystem::path& path);

struct TermTable {
  std::vector<std::string> models;
  std::vector<Term> terms;
  std::vector<std::vector<std::size_t>> counts;  // [model][term]
};

/// Each term encoded on its own.
TermTable term_token_table(const std::vector<NamedModel>& models, const std::vector<Term>& terms);

struct DomainAverages {
  std::vector<std::string> domains;          // first-appearance order
  std::vector<std::vector<Ratio>> by_model;  // [model][domain]
  std::vector<Ratio> overall;                // [model], mean of the domain means
};

DomainAverages term_table_averages(const TermTable& table);

struct SizeDistribution {
  std::string model;
  std::size_t vocab_size = 0;
  std::array<std::size_t, 11> counts{};  // lengths 1..10, then >10
  /// Share of the vocabulary whose surface is complete UTF-8; the remaining
  /// partial byte tokens are still bucketed by their lenient length.
  Ratio coverage;

  Ratio bucket(std::size_t length) const;  // 1..10, 11 for >10
  Ratio up_to_five() const;
  Ratio six_to_ten() const;
  Ratio up_to_ten() const;
};

/// Lengths are decoded characters with one leading space excluded.
SizeDistribution token_size_distribution(const NamedModel& model);
SizeDistribution size_distribution_from_lengths(std::string model, const std::vector<std::size_t>& lengths);

struct TextPair {
  std::string error;
  std::string correct;
};

/// "error<TAB>correct" lines.
std::vector<TextPair> parse_pairs(std::string_view content, std::string_view source);
std::vector<TextPair> load_pairs(const std::filesystem::path& path);

struct AlignmentRow {
  std::string model;
  TextPair pair;
  std::vector<std::string> error_surfaces;
  std::vector<std::string> correct_surfaces;
  std::size_t shared = 0;  // multiset intersection of the two surface lists
};

std::vector<AlignmentRow> error_alignment_report(const std::vector<NamedModel>& models,
                                                 const std::vector<TextPair>& pairs);

}  // namespace lextok
