#include <gtest/gtest.h>
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "lextok/catalog.hpp"
#include "lextok/error.hpp"
#include "lextok/normalization.hpp"

using namespace lextok;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(Catalog, Years) {
  const auto years = generate_years();
  EXPECT_EQ(years.size(), 275u);
  EXPECT_EQ(years.front(), "1776");
  EXPECT_EQ(years.back(), "2050");
  EXPECT_FALSE(contains(years, "1775"));
  EXPECT_TRUE(std::is_sorted(years.begin(), years.end()));
}

TEST(Catalog, Numbers) {
  const auto numbers = generate_numbers();
  EXPECT_EQ(numbers.size(), 999u);
  EXPECT_EQ(numbers.front(), "1");
  EXPECT_TRUE(contains(numbers, "999"));
  EXPECT_FALSE(contains(numbers, "1000"));
  EXPECT_FALSE(contains(numbers, "007"));
  EXPECT_FALSE(contains(numbers, "0"));
}

TEST(Catalog, Enumerations) {
  const auto e = generate_enumerations(50);
  EXPECT_TRUE(contains(e, "(iv)"));
  EXPECT_TRUE(contains(e, "xiv"));
  EXPECT_TRUE(contains(e, "XIV"));
  EXPECT_TRUE(contains(e, "iv"));
  EXPECT_FALSE(contains(e, "iiii"));
  EXPECT_TRUE(contains(e, "(l)"));
  EXPECT_FALSE(contains(e, "(li)"));
  EXPECT_EQ(e.size(), 150u);
  EXPECT_EQ(roman_numeral(4), "iv");
  EXPECT_EQ(roman_numeral(49), "xlix");
  EXPECT_EQ(roman_numeral(100, true), "C");
  EXPECT_THROW(generate_enumerations(0), ArgumentError);
  EXPECT_THROW(generate_enumerations(101), ArgumentError);
  EXPECT_NO_THROW(generate_enumerations(100));
  const auto letters = generate_letter_enumerations();
  EXPECT_EQ(letters.size(), 52u);
  EXPECT_TRUE(contains(letters, "(a)"));
}

TEST(Catalog, WhitespaceRuns) {
  for (int max_run : {1, 2, 16}) {
    const auto runs = generate_whitespace_runs(max_run);
    EXPECT_EQ(runs.size(), static_cast<std::size_t>(4 * max_run + 1));
    EXPECT_TRUE(contains(runs, "\r\n"));
  }
  const auto runs = generate_whitespace_runs(16);
  EXPECT_TRUE(contains(runs, "  "));
  EXPECT_TRUE(contains(runs, "\n\n"));
  EXPECT_TRUE(contains(runs, std::string(16, '\t')));
  EXPECT_THROW(generate_whitespace_runs(0), ArgumentError);
}

TEST(Catalog, Markup) {
  const auto tokens = generate_markup_tokens();
  std::set<TokenCategory> seen;
  bool heading = false;
  bool closing = false;
  for (const auto& t : tokens) {
    seen.insert(t.category);
    heading = heading || (t.category == TokenCategory::markdown && t.surface == "##");
    closing = closing || (t.category == TokenCategory::html && t.surface.rfind("</", 0) == 0);
    EXPECT_EQ(normalize(t.surface, {}), t.surface) << t.surface;
  }
  EXPECT_TRUE(heading);
  EXPECT_TRUE(closing);
  EXPECT_EQ(seen.size(), 4u);
}

TEST(Catalog, Citations) {
  const auto embedded = embedded_citation_tokens();
  EXPECT_GE(embedded.size(), 50u);
  for (const char* s : {"Civ.", "Fed.", "U.S.C.", "F.3d"}) EXPECT_TRUE(contains(embedded, s)) << s;
  EXPECT_EQ(load_citation_tokens("/nonexistent/citations.txt"), embedded);

  std::vector<std::string> warnings;
  EXPECT_TRUE(parse_citation_tokens("", "empty.txt", &warnings).empty());
  EXPECT_EQ(warnings.size(), 1u);

  const auto parsed = parse_citation_tokens("# reporters\nF.2d\n\n  So. 2d  # southern\n", "c.txt");
  EXPECT_EQ(parsed, (std::vector<std::string>{"F.2d", "So. 2d"}));
  try {
    parse_citation_tokens("ok\nbad\x01value\n", "c.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Catalog, CitationFileOnDisk) {
  const auto path = std::filesystem::temp_directory_path() / ("lextok_citations_" + std::to_string(::getpid()) + ".txt");
  std::ofstream(path) << "Alpha.\nBeta.\n";
  EXPECT_EQ(load_citation_tokens(path), (std::vector<std::string>{"Alpha.", "Beta."}));
  std::filesystem::remove(path);
}

TEST(Catalog, AssembleCounts) {
  CatalogConfig c;
  c.categories = {TokenCategory::years, TokenCategory::numbers};
  c.include_space_variants = false;
  EXPECT_EQ(assemble_catalog(c).entries.size(), 1274u);
  c.include_space_variants = true;
  const auto with_variants = assemble_catalog(c);
  EXPECT_EQ(with_variants.entries.size(), 2548u);
  const auto surfaces = with_variants.surfaces();
  EXPECT_TRUE(contains(surfaces, " 1776"));
  EXPECT_TRUE(contains(surfaces, " 56"));
}

TEST(Catalog, AssembleDeduplicatesAndOrders) {
  CatalogConfig c;
  c.categories = {TokenCategory::numbers, TokenCategory::enumerations, TokenCategory::whitespace};
  const auto catalog = assemble_catalog(c);
  std::set<std::string> unique;
  for (const auto& e : catalog.entries) EXPECT_TRUE(unique.insert(e.surface).second) << e.surface;
  // Category order is fixed regardless of how the config lists them.
  EXPECT_EQ(catalog.entries.front().category, TokenCategory::whitespace);
  EXPECT_EQ(catalog.entries.back().category, TokenCategory::enumerations);
  EXPECT_EQ(assemble_catalog(c), catalog);
  EXPECT_EQ(export_catalog(assemble_catalog(c)), export_catalog(catalog));
}

TEST(Catalog, UncasedLowercasesThenDeduplicates) {
  CatalogConfig c;
  c.categories = {TokenCategory::enumerations};
  c.include_space_variants = false;
  c.case_mode = CaseMode::uncased;
  const auto surfaces = assemble_catalog(c).surfaces();
  EXPECT_TRUE(contains(surfaces, "xiv"));
  EXPECT_FALSE(contains(surfaces, "XIV"));
  EXPECT_FALSE(contains(surfaces, "(A)"));
  c.case_mode = CaseMode::cased;
  EXPECT_GT(assemble_catalog(c).entries.size(), surfaces.size());
}

TEST(Catalog, AllSurfacesAreNfkcFixedPoints) {
  CatalogConfig c;
  c.categories.assign(std::begin(kAllCategories), std::end(kAllCategories));
  const auto catalog = assemble_catalog(c);
  EXPECT_GT(catalog.entries.size(), 3000u);
  for (const auto& e : catalog.entries) EXPECT_EQ(normalize(e.surface, {}), e.surface) << e.surface;
}

TEST(Catalog, Export) {
  CatalogConfig c;
  c.categories = {TokenCategory::whitespace};
  c.max_whitespace_run = 2;
  const std::string out = export_catalog(assemble_catalog(c));
  EXPECT_EQ(out.rfind("[whitespace]\n", 0), 0u);
  EXPECT_NE(out.find("\\s\\s\n"), std::string::npos);
  EXPECT_NE(out.find("\\r\\n\n"), std::string::npos);
}

TEST(Catalog, CategoryNames) {
  for (TokenCategory c : kAllCategories) EXPECT_EQ(parse_category(to_string(c)), c);
  EXPECT_THROW(parse_category("emoji"), ArgumentError);
  EXPECT_TRUE(is_word_like(TokenCategory::years));
  EXPECT_FALSE(is_word_like(TokenCategory::html));
}
