#include "lextok/catalog.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "lextok/error.hpp"
#include "lextok/utf8.hpp"

namespace lextok {

namespace embedded {
extern const std::string_view markup_json;
extern const std::string_view citations_txt;
}  // namespace embedded

namespace {

constexpr std::string_view kCategoryNames[] = {
    "whitespace", "markdown", "html",         "json",      "xml",
    "years",      "numbers",  "enumerations", "citations",
};

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string escape_surface(std::string_view surface) {
  std::string out;
  for (char c : surface) {
    switch (c) {
      case ' ': out += "\\s"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(TokenCategory category) {
  return kCategoryNames[static_cast<std::size_t>(category)];
}

TokenCategory parse_category(std::string_view name) {
  for (TokenCategory category : kAllCategories) {
    if (to_string(category) == name) return category;
  }
  throw ArgumentError("unknown token category '" + std::string(name) + "'");
}

bool is_word_like(TokenCategory category) {
  switch (category) {
    case TokenCategory::years:
    case TokenCategory::numbers:
    case TokenCategory::enumerations:
    case TokenCategory::citations:
      return true;
    default:
      return false;
  }
}

std::vector<std::string> TokenCatalog::surfaces() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& entry : entries) out.push_back(entry.surface);
  return out;
}

std::vector<std::string> generate_years() {
  std::vector<std::string> out;
  for (int year = 1776; year <= 2050; ++year) out.push_back(std::to_string(year));
  return out;
}

std::vector<std::string> generate_numbers() {
  std::vector<std::string> out;
  for (int n = 1; n <= 999; ++n) out.push_back(std::to_string(n));
  return out;
}

std::string roman_numeral(int value, bool upper) {
  if (value < 1 || value > 3999) throw ArgumentError("roman numeral out of range");
  static constexpr std::pair<int, std::string_view> kDigits[] = {
      {1000, "m"}, {900, "cm"}, {500, "d"}, {400, "cd"}, {100, "c"}, {90, "xc"}, {50, "l"},
      {40, "xl"},  {10, "x"},   {9, "ix"},  {5, "v"},    {4, "iv"},  {1, "i"},
  };
  std::string out;
  for (const auto& [weight, digits] : kDigits) {
    while (value >= weight) {
      out += digits;
      value -= weight;
    }
  }
  if (upper) {
    for (char& c : out) c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::vector<std::string> generate_enumerations(int max_value) {
  if (max_value < 1 || max_value > 100) {
    throw ArgumentError("enumeration max_value must be in [1, 100], got " +
                        std::to_string(max_value));
  }
  std::vector<std::string> out;
  for (int i = 1; i <= max_value; ++i) out.push_back(roman_numeral(i));
  for (int i = 1; i <= max_value; ++i) out.push_back(roman_numeral(i, true));
  for (int i = 1; i <= max_value; ++i) out.push_back("(" + roman_numeral(i) + ")");
  return out;
}

std::vector<std::string> generate_letter_enumerations() {
  std::vector<std::string> out;
  for (char c = 'a'; c <= 'z'; ++c) out.push_back(std::string{'(', c, ')'});
  for (char c = 'A'; c <= 'Z'; ++c) out.push_back(std::string{'(', c, ')'});
  return out;
}

std::vector<std::string> generate_whitespace_runs(int max_run) {
  if (max_run < 1) throw ArgumentError("max_run must be >= 1");
  std::vector<std::string> out;
  for (char c : {' ', '\t', '\n', '\r'}) {
    for (int n = 1; n <= max_run; ++n) out.emplace_back(static_cast<std::size_t>(n), c);
  }
  out.emplace_back("\r\n");
  return out;
}

std::vector<CatalogEntry> generate_markup_tokens() {
  const auto doc = nlohmann::json::parse(embedded::markup_json);
  std::vector<CatalogEntry> out;
  const std::pair<const char*, TokenCategory> groups[] = {
      {"markdown", TokenCategory::markdown},
      {"html", TokenCategory::html},
      {"json", TokenCategory::json},
      {"xml", TokenCategory::xml},
  };
  for (const auto& [key, category] : groups) {
    for (const auto& surface : doc.at(key)) out.push_back({surface.get<std::string>(), category});
  }
  return out;
}

std::vector<std::string> parse_citation_tokens(std::string_view content, std::string_view source,
                                               std::vector<std::string>* warnings) {
  std::vector<std::string> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    const std::string_view raw =
        content.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
    ++line_no;
    if (auto bad = utf8::first_invalid(raw)) {
      throw ParseError(std::string(source), line_no, "invalid UTF-8 at column " + std::to_string(*bad + 1));
    }
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    // Trailing comments start at a '#' preceded by whitespace.
    for (std::size_t i = 1; i < line.size(); ++i) {
      if (line[i] == '#' && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line = trim(line.substr(0, i));
        break;
      }
    }
    for (char c : line) {
      if (static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
        throw ParseError(std::string(source), line_no, "control character in abbreviation");
      }
    }
    out.emplace_back(line);
  }
  if (out.empty() && warnings != nullptr) {
    warnings->push_back(std::string(source) + ": citation catalog is empty");
  }
  return out;
}

std::vector<std::string> embedded_citation_tokens() {
  return parse_citation_tokens(embedded::citations_txt, "<embedded citations>");
}

std::vector<std::string> load_citation_tokens(const std::filesystem::path& path,
                                              std::vector<std::string>* warnings) {
  if (path.empty() || !std::filesystem::exists(path)) {
    if (!path.empty() && warnings != nullptr) {
      warnings->push_back(path.string() + " not found; using embedded citation sample");
    }
    return embedded_citation_tokens();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read citation catalog " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_citation_tokens(buf.str(), path.string(), warnings);
}

TokenCatalog assemble_catalog(const CatalogConfig& config) {
  TokenCatalog catalog;
  catalog.include_space_variants = config.include_space_variants;
  std::unordered_set<std::string> seen;
  const NormalizationConfig lowercase{UnicodeForm::nfkc, CaseMode::uncased, true};

  auto add = [&](std::string surface, TokenCategory category) {
    if (config.case_mode == CaseMode::uncased) surface = normalize(surface, lowercase);
    if (surface.empty() || !seen.insert(surface).second) return;
    catalog.entries.push_back({std::move(surface), category});
  };
  auto add_group = [&](const std::vector<std::string>& surfaces, TokenCategory category) {
    for (const auto& s : surfaces) add(s, category);
    if (config.include_space_variants && is_word_like(category)) {
      for (const auto& s : surfaces) add(" " + s, category);
    }
  };

  std::vector<CatalogEntry> markup;
  for (TokenCategory category : kAllCategories) {
    const bool selected = std::find(config.categories.begin(), config.categories.end(),
                                    category) != config.categories.end();
    if (!selected) continue;
    switch (category) {
      case TokenCategory::whitespace:
        add_group(generate_whitespace_runs(config.max_whitespace_run), category);
        break;
      case TokenCategory::markdown:
      case TokenCategory::html:
      case TokenCategory::json:
      case TokenCategory::xml:
        if (markup.empty()) markup = generate_markup_tokens();
        for (const auto& entry : markup) {
          if (entry.category == category) add(entry.surface, category);
        }
        break;
      case TokenCategory::years:
        add_group(generate_years(), category);
        break;
      case TokenCategory::numbers:
        add_group(generate_numbers(), category);
        break;
      case TokenCategory::enumerations: {
        auto surfaces = generate_enumerations(config.max_enumeration);
        for (auto& s : generate_letter_enumerations()) surfaces.push_back(std::move(s));
        add_group(surfaces, category);
        break;
      }
      case TokenCategory::citations:
        add_group(load_citation_tokens(config.citation_file), category);
        break;
    }
  }
  return catalog;
}

std::string export_catalog(const TokenCatalog& catalog) {
  std::string out;
  bool first = true;
  for (TokenCategory category : kAllCategories) {
    bool header = false;
    for (const auto& entry : catalog.entries) {
      if (entry.category != category) continue;
      if (!header) {
        if (!first) out += "\n";
        out += "[" + std::string(to_string(category)) + "]\n";
        header = true;
        first = false;
      }
      out += escape_surface(entry.surface) + "\n";
    }
  }
  return out;
}

}  // namespace lextok
