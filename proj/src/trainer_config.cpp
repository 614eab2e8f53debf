#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lextok/error.hpp"
#include "lextok/trainer.hpp"

namespace lextok {

namespace {

std::vector<std::string> default_specials() {
  std::vector<std::string> out;
  for (SpecialRole role : kAllRoles) out.push_back(default_special_surface(role));
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto next = s.find(sep, pos);
    if (next == std::string_view::npos) next = s.size();
    const auto item = trim(s.substr(pos, next - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = next + 1;
  }
  return out;
}

}  // namespace

TrainerConfig trainer_preset(std::string_view name) {
  TrainerConfig c;
  c.special_tokens = default_specials();
  c.normalization = {UnicodeForm::nfkc, CaseMode::cased, true};
  const std::vector<TokenCategory> all(std::begin(kAllCategories), std::end(kAllCategories));
  if (name == "char-4k" || name == "char-8k" || name == "char-16k") {
    c.target_vocab_size = name == "char-4k" ? 4096 : name == "char-8k" ? 8192 : 16384;
    c.max_token_chars = name == "char-16k" ? 4 : 3;
    c.catalog.categories = {TokenCategory::whitespace};
  } else if (name == "domain-64k" || name == "domain-128k-cased" || name == "domain-128k-uncased") {
    c.target_vocab_size = name == "domain-64k" ? 65536 : 131072;
    c.catalog.categories = all;
    if (name == "domain-128k-uncased") c.normalization.case_mode = CaseMode::uncased;
  } else {
    throw ArgumentError("unknown preset '" + std::string(name) + "'");
  }
  c.catalog.case_mode = c.normalization.case_mode;
  return c;
}

TrainerConfig parse_trainer_config(std::string_view text, std::string_view source,
                                   const std::filesystem::path& base_dir) {
  TrainerConfig c = trainer_preset("domain-64k");
  const std::string src(source);
  std::size_t line_no = 0;
  bool seen_key = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(src, line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));

    auto integer = [&]() -> std::uint64_t {
      std::uint64_t v = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ParseError(src, line_no, "'" + key + "' expects a non-negative integer, got '" + value + "'");
      }
      return v;
    };
    auto boolean = [&]() {
      if (value == "true" || value == "yes" || value == "1") return true;
      if (value == "false" || value == "no" || value == "0") return false;
      throw ParseError(src, line_no, "'" + key + "' expects true or false, got '" + value + "'");
    };

    try {
      if (key == "preset") {
        if (seen_key) throw ParseError(src, line_no, "'preset' must precede other keys");
        c = trainer_preset(value);
      } else if (key == "target_vocab_size") {
        c.target_vocab_size = integer();
      } else if (key == "max_token_chars") {
        if (value == "none") {
          c.max_token_chars.reset();
        } else {
          c.max_token_chars = integer();
        }
      } else if (key == "min_pair_frequency") {
        c.min_pair_frequency = integer();
      } else if (key == "unicode_form") {
        if (value == "nfkc") {
          c.normalization.unicode_form = UnicodeForm::nfkc;
        } else if (value == "none") {
          c.normalization.unicode_form = UnicodeForm::none;
        } else {
          throw ParseError(src, line_no, "unicode_form must be nfkc or none");
        }
      } else if (key == "case_mode") {
        if (value == "cased") {
          c.normalization.case_mode = CaseMode::cased;
        } else if (value == "uncased") {
          c.normalization.case_mode = CaseMode::uncased;
        } else {
          throw ParseError(src, line_no, "case_mode must be cased or uncased");
        }
        c.catalog.case_mode = c.normalization.case_mode;
      } else if (key == "space_prefix") {
        c.normalization.space_prefix = boolean();
      } else if (key == "categories") {
        c.catalog.categories.clear();
        if (value == "all") {
          c.catalog.categories.assign(std::begin(kAllCategories), std::end(kAllCategories));
        } else if (value != "none") {
          for (const auto& name : split_list(value, ',')) c.catalog.categories.push_back(parse_category(name));
        }
      } else if (key == "include_space_variants") {
        c.catalog.include_space_variants = boolean();
      } else if (key == "max_enumeration") {
        c.catalog.max_enumeration = static_cast<int>(integer());
      } else if (key == "max_whitespace_run") {
        c.catalog.max_whitespace_run = static_cast<int>(integer());
      } else if (key == "citation_file") {
        std::filesystem::path p = value;
        c.catalog.citation_file = p.is_relative() && !value.empty() ? base_dir / p : p;
      } else if (key == "special_tokens") {
        c.special_tokens = value == "none" ? std::vector<std::string>{} : split_list(value, ' ');
      } else if (key == "threads") {
        c.threads = static_cast<unsigned>(integer());
      } else {
        throw ParseError(src, line_no, "unknown key '" + key + "'");
      }
    } catch (const ArgumentError& e) {
      throw ParseError(src, line_no, e.what());
    }
    seen_key = true;
  }
  return c;
}

TrainerConfig load_trainer_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trainer_config(buf.str(), path.string(), path.parent_path());
}

void validate(const TrainerConfig& c) {
  if (!std::has_single_bit(c.target_vocab_size)) {
    throw TrainingError("target_vocab_size " + std::to_string(c.target_vocab_size) +
                        " is not a power of two");
  }
  if (c.max_token_chars && *c.max_token_chars < 2) {
    throw TrainingError("max_token_chars must be at least 2");
  }
  if (c.min_pair_frequency < 1) throw TrainingError("min_pair_frequency must be at least 1");
  for (std::size_t i = 0; i < c.special_tokens.size(); ++i) {
    if (c.special_tokens[i].empty()) throw TrainingError("empty special token");
    if (std::find(c.special_tokens.begin(), c.special_tokens.begin() + static_cast<std::ptrdiff_t>(i),
                  c.special_tokens[i]) != c.special_tokens.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw TrainingError("special token '" + c.special_tokens[i] + "' listed twice");
    }
  }
}

}  // namespace lextok
