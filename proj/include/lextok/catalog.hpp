#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lextok/normalization.hpp"

namespace lextok {

/// Custom-token categories, in assembly order.
enum class TokenCategory {
  whitespace,
  markdown,
  html,
  json,
  xml,
  years,
  numbers,
  enumerations,
  citations,
};

inline constexpr TokenCategory kAllCategories[] = {
    TokenCategory::whitespace, TokenCategory::markdown, TokenCategory::html,
    TokenCategory::json,       TokenCategory::xml,      TokenCategory::years,
    TokenCategory::numbers,    TokenCategory::enumerations, TokenCategory::citations,
};

std::string_view to_string(TokenCategory category);
TokenCategory parse_category(std::string_view name);  // throws ArgumentError

/// Word-like categories get space-prefixed variants and boundary-checked
/// matching; whitespace and markup do not.
bool is_word_like(TokenCategory category);

struct CatalogEntry {
  std::string surface;
  TokenCategory category;
  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct TokenCatalog {
  std::vector<CatalogEntry> entries;
  bool include_space_variants = false;

  std::vector<std::string> surfaces() const;
  friend bool operator==(const TokenCatalog&, const TokenCatalog&) = default;
};

/// Which generators feed assemble_catalog and with what parameters.
struct CatalogConfig {
  std::vector<TokenCategory> categories;
  bool include_space_variants = true;
  int max_enumeration = 50;
  int max_whitespace_run = 16;
  /// Citation abbreviations file; empty path or a missing file uses the
  /// embedded sample.
  std::filesystem::path citation_file;
  CaseMode case_mode = CaseMode::cased;

  friend bool operator==(const CatalogConfig&, const CatalogConfig&) = default;
};

std::vector<std::string> generate_years();    // "1776".."2050"
std::vector<std::string> generate_numbers();  // "1".."999"
/// Lowercase and uppercase Roman numerals 1..max_value, then "(i)".."(max)".
/// Throws ArgumentError unless 1 <= max_value <= 100.
std::vector<std::string> generate_enumerations(int max_value);
/// "(a)".."(z)" and "(A)".."(Z)".
std::vector<std::string> generate_letter_enumerations();
/// Runs of space, tab, newline and carriage return of length 1..max_run, then
/// "\r\n". Throws ArgumentError when max_run < 1.
std::vector<std::string> generate_whitespace_runs(int max_run);
/// Embedded markdown/html/json/xml fixture lists.
std::vector<CatalogEntry> generate_markup_tokens();

std::string roman_numeral(int value, bool upper = false);

/// Reads a citation catalog: one abbreviation per line, '#' starts a comment.
/// A missing file falls back to the embedded sample. Lines with embedded
/// control characters are rejected with ParseError. An empty file yields an
/// empty list and a warning on `warnings` when given.
std::vector<std::string> load_citation_tokens(const std::filesystem::path& path,
                                              std::vector<std::string>* warnings = nullptr);
std::vector<std::string> parse_citation_tokens(std::string_view content, std::string_view source,
                                               std::vector<std::string>* warnings = nullptr);
std::vector<std::string> embedded_citation_tokens();

/// Union of the selected generators in category order, deduplicated. Space
/// variants (" " + surface) follow each word-like category's bare forms.
/// Uncased configs lowercase surfaces before deduplication.
TokenCatalog assemble_catalog(const CatalogConfig& config);

/// Catalog export: "[category]" headers followed by one surface per line.
/// Surfaces containing whitespace are written with \s \t \n \r escapes.
std::string export_catalog(const TokenCatalog& catalog);

}  // namespace lextok
