#include "lextok/pretokenizer.hpp"

#include <unicode/regex.h>
#include <unicode/utext.h>

#include <memory>

#include "lextok/byte_remap.hpp"
#include "lextok/error.hpp"
#include "lextok/utf8.hpp"

namespace lextok {

namespace {

enum class CharClass { letter, number, space, other };

struct Cursor {
  std::string_view text;

  char32_t at(std::size_t pos, std::size_t* len) const {
    auto cp = utf8::decode_at(text, pos, len);
    if (!cp) throw EncodingError("invalid UTF-8", pos);
    return *cp;
  }

  CharClass class_at(std::size_t pos, std::size_t* len) const { return classify(at(pos, len)); }

  static CharClass classify(char32_t cp) {
    if (unicode::is_letter(cp)) return CharClass::letter;
    if (unicode::is_number(cp)) return CharClass::number;
    if (unicode::is_whitespace(cp)) return CharClass::space;
    return CharClass::other;
  }

  // End of the maximal run of `cls` starting at `pos`; also reports the
  // start of the run's last character.
  std::size_t run_end(std::size_t pos, CharClass cls, std::size_t* last_start = nullptr) const {
    std::size_t last = pos;
    while (pos < text.size()) {
      std::size_t len = 0;
      if (class_at(pos, &len) != cls) break;
      last = pos;
      pos += len;
    }
    if (last_start != nullptr) *last_start = last;
    return pos;
  }
};

std::size_t contraction_length(std::string_view rest) {
  if (rest.size() < 2 || rest[0] != '\'') return 0;
  // Alternation order of the pattern: 's 't 're 've 'm 'll 'd.
  for (std::string_view suffix : {"s", "t", "re", "ve", "m", "ll", "d"}) {
    if (rest.substr(1, suffix.size()) == suffix) return 1 + suffix.size();
  }
  return 0;
}

std::string rewrite_whitespace_classes(std::string_view pattern) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '\\' && i + 1 < pattern.size()) {
      const char next = pattern[i + 1];
      if (next == 's') {
        out += "\\p{White_Space}";
      } else if (next == 'S') {
        out += "\\P{White_Space}";
      } else {
        out += pattern.substr(i, 2);
      }
      ++i;
      continue;
    }
    out.push_back(pattern[i]);
  }
  return out;
}

std::unique_ptr<icu::RegexPattern> compile_pattern(std::string_view pattern) {
  const std::string rewritten = rewrite_whitespace_classes(pattern);
  UErrorCode status = U_ZERO_ERROR;
  UParseError parse_error;
  std::unique_ptr<icu::RegexPattern> compiled(icu::RegexPattern::compile(
      icu::UnicodeString::fromUTF8(rewritten), 0, parse_error, status));
  if (U_FAILURE(status)) {
    throw ArgumentError("cannot compile split pattern '" + std::string(pattern) +
                        "': " + u_errorName(status));
  }
  return compiled;
}

std::vector<Span> split_compiled(std::string_view text, const icu::RegexPattern& pattern) {
  std::vector<Span> spans;
  if (text.empty()) return spans;
  UErrorCode status = U_ZERO_ERROR;
  UText* ut = utext_openUTF8(nullptr, text.data(), static_cast<int64_t>(text.size()), &status);
  std::unique_ptr<UText, decltype(&utext_close)> guard(ut, &utext_close);
  std::unique_ptr<icu::RegexMatcher> matcher(pattern.matcher(status));
  if (U_FAILURE(status)) throw Error(std::string("regex matcher: ") + u_errorName(status));
  matcher->reset(ut);
  std::size_t last = 0;
  while (matcher->find(status) && U_SUCCESS(status)) {
    const auto begin = static_cast<std::size_t>(matcher->start64(status));
    const auto end = static_cast<std::size_t>(matcher->end64(status));
    if (begin == end) continue;
    if (begin > last) spans.push_back({last, begin});
    spans.push_back({begin, end});
    last = end;
  }
  if (U_FAILURE(status)) throw Error(std::string("regex split: ") + u_errorName(status));
  if (last < text.size()) spans.push_back({last, text.size()});
  return spans;
}

}  // namespace

std::vector<Span> split_space_adhering(std::string_view text) {
  std::vector<Span> spans;
  const Cursor cur{text};
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::size_t n = contraction_length(text.substr(pos)); n > 0) {
      spans.push_back({pos, pos + n});
      pos += n;
      continue;
    }
    std::size_t len = 0;
    const CharClass cls = cur.class_at(pos, &len);
    if (cls != CharClass::space) {
      const std::size_t end = cur.run_end(pos, cls);
      spans.push_back({pos, end});
      pos = end;
      continue;
    }
    // A literal space directly followed by a non-space run adheres to it.
    if (text[pos] == ' ' && pos + 1 < text.size()) {
      std::size_t next_len = 0;
      const CharClass next = cur.class_at(pos + 1, &next_len);
      if (next != CharClass::space) {
        const std::size_t end = cur.run_end(pos + 1, next);
        spans.push_back({pos, end});
        pos = end;
        continue;
      }
    }
    std::size_t last_start = pos;
    const std::size_t end = cur.run_end(pos, CharClass::space, &last_start);
    if (end == text.size() || last_start == pos) {
      // Trailing run, or a single space character before a non-space.
      spans.push_back({pos, end});
      pos = end;
    } else {
      // `\s+(?!\S)` backs off one character so it can precede the next word.
      spans.push_back({pos, last_start});
      pos = last_start;
    }
  }
  return spans;
}

std::vector<Span> split_isolated_runs(std::string_view text) {
  std::vector<Span> spans;
  const Cursor cur{text};
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = 0;
    const std::size_t end = cur.run_end(pos, cur.class_at(pos, &len));
    spans.push_back({pos, end});
    pos = end;
  }
  return spans;
}

std::vector<Span> split_with_regex(std::string_view text, std::string_view pattern) {
  utf8::require_valid(text);
  return split_compiled(text, *compile_pattern(pattern));
}

PreTokenizerConfig PreTokenizerConfig::from(const NormalizationConfig& config) {
  PreTokenizerConfig out;
  out.kind = config.space_prefix ? Kind::space_adhering : Kind::isolated_runs;
  return out;
}

struct PreTokenizer::CompiledRegex {
  std::unique_ptr<icu::RegexPattern> pattern;
};

PreTokenizer::PreTokenizer(PreTokenizerConfig config) : config_(std::move(config)) {
  if (config_.kind == PreTokenizerConfig::Kind::custom_regex) {
    if (config_.regex == kSpaceAdheringPattern) {
      config_.kind = PreTokenizerConfig::Kind::space_adhering;
    } else if (config_.regex == kIsolatedRunsPattern) {
      config_.kind = PreTokenizerConfig::Kind::isolated_runs;
    } else {
      auto compiled = std::make_shared<CompiledRegex>();
      compiled->pattern = compile_pattern(config_.regex);
      regex_ = std::move(compiled);
    }
  }
  if (config_.kind != PreTokenizerConfig::Kind::custom_regex) config_.regex.clear();
}

std::vector<Span> PreTokenizer::split(std::string_view text) const {
  switch (config_.kind) {
    case PreTokenizerConfig::Kind::space_adhering:
      return split_space_adhering(text);
    case PreTokenizerConfig::Kind::isolated_runs:
      return split_isolated_runs(text);
    case PreTokenizerConfig::Kind::custom_regex:
      return split_compiled(text, *regex_->pattern);
    case PreTokenizerConfig::Kind::bytes_only:
      break;
  }
  if (text.empty()) return {};
  return {Span{0, text.size()}};
}

std::vector<Piece> pretokenize(std::string_view normalized, const NormalizationConfig& config) {
  utf8::require_valid(normalized);
  const auto spans = config.space_prefix ? split_space_adhering(normalized)
                                         : split_isolated_runs(normalized);
  std::vector<Piece> pieces;
  pieces.reserve(spans.size());
  for (const Span& span : spans) {
    const auto surface = normalized.substr(span.begin, span.end - span.begin);
    pieces.push_back({byte_remap(surface), utf8::count_chars(surface), span});
  }
  return pieces;
}

}  // namespace lextok
