#include "lextok/serialization.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lextok/error.hpp"
#include "lextok/normalization.hpp"
#include "lextok/utf8.hpp"

namespace lextok {

namespace {

using ordered = nlohmann::ordered_json;
using json = nlohmann::json;

ordered byte_level(bool add_prefix_space, bool use_regex) {
  ordered j;
  j["type"] = "ByteLevel";
  j["add_prefix_space"] = add_prefix_space;
  j["trim_offsets"] = true;
  j["use_regex"] = use_regex;
  return j;
}

ordered normalizer_json(const NormalizationConfig& n) {
  const bool nfkc = n.unicode_form == UnicodeForm::nfkc;
  const bool lower = n.case_mode == CaseMode::uncased;
  if (!nfkc && !lower) return nullptr;
  ordered nfkc_j = {{"type", "NFKC"}};
  ordered lower_j = {{"type", "Lowercase"}};
  if (nfkc && lower) {
    ordered j;
    j["type"] = "Sequence";
    j["normalizers"] = ordered::array({nfkc_j, lower_j});
    return j;
  }
  return nfkc ? nfkc_j : lower_j;
}

ordered pre_tokenizer_json(const PreTokenizerConfig& p) {
  using Kind = PreTokenizerConfig::Kind;
  switch (p.kind) {
    case Kind::space_adhering: return byte_level(p.add_prefix_space, true);
    case Kind::bytes_only: return byte_level(p.add_prefix_space, false);
    case Kind::isolated_runs:
    case Kind::custom_regex: {
      ordered split;
      split["type"] = "Split";
      split["pattern"] = {{"Regex", p.kind == Kind::isolated_runs ? std::string(kIsolatedRunsPattern)
                                                                  : p.regex}};
      split["behavior"] = "Isolated";
      split["invert"] = false;
      ordered j;
      j["type"] = "Sequence";
      j["pretokenizers"] = ordered::array({split, byte_level(p.add_prefix_space, false)});
      return j;
    }
  }
  return nullptr;
}

[[noreturn]] void fail(std::string_view source, const std::string& what) {
  throw LoadError(std::string(source) + ": " + what);
}

std::string type_of(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) return {};
  return j["type"].get<std::string>();
}

NormalizationConfig parse_normalizer(const json& j, std::string_view source) {
  NormalizationConfig n;
  n.unicode_form = UnicodeForm::none;
  n.case_mode = CaseMode::cased;
  if (j.is_null()) return n;
  std::vector<json> steps;
  if (type_of(j) == "Sequence") {
    for (const auto& step : j.at("normalizers")) steps.push_back(step);
  } else {
    steps.push_back(j);
  }
  // Only the orders the runtime reproduces: [NFKC], [Lowercase], [NFKC, Lowercase].
  std::size_t i = 0;
  if (i < steps.size() && type_of(steps[i]) == "NFKC") {
    n.unicode_form = UnicodeForm::nfkc;
    ++i;
  }
  if (i < steps.size() && type_of(steps[i]) == "Lowercase") {
    n.case_mode = CaseMode::uncased;
    ++i;
  }
  if (i < steps.size()) fail(source, "unsupported normalizer '" + type_of(steps[i]) + "'");
  return n;
}

PreTokenizerConfig parse_pre_tokenizer(const json& j, std::string_view source) {
  using Kind = PreTokenizerConfig::Kind;
  if (j.is_null()) fail(source, "a byte-level pre_tokenizer is required");
  std::vector<json> steps;
  if (type_of(j) == "Sequence") {
    for (const auto& step : j.at("pretokenizers")) steps.push_back(step);
  } else {
    steps.push_back(j);
  }

  PreTokenizerConfig p;
  std::optional<std::string> regex;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    const std::string type = type_of(step);
    if (type == "Split" && i + 1 < steps.size() && !regex) {
      const auto& pattern = step.at("pattern");
      if (pattern.contains("Regex")) {
        regex = pattern["Regex"].get<std::string>();
      } else if (pattern.contains("String")) {
        // Literal split string: escape into a regex.
        std::string escaped;
        for (char c : pattern["String"].get<std::string>()) {
          if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) escaped += '\\';
          escaped += c;
        }
        regex = escaped;
      } else {
        fail(source, "Split pre_tokenizer without a pattern");
      }
      if (step.value("behavior", "") != "Isolated" || step.value("invert", false)) {
        fail(source, "only Split with behavior 'Isolated' and invert=false is supported");
      }
    } else if (type == "ByteLevel" && i + 1 == steps.size()) {
      p.add_prefix_space = step.value("add_prefix_space", false);
      const bool use_regex = step.value("use_regex", true);
      if (use_regex && regex) fail(source, "Split followed by a regex ByteLevel is not supported");
      if (use_regex) {
        p.kind = Kind::space_adhering;
      } else if (!regex) {
        p.kind = Kind::bytes_only;
      } else if (*regex == kIsolatedRunsPattern) {
        p.kind = Kind::isolated_runs;
      } else {
        p.kind = Kind::custom_regex;
        p.regex = *regex;
      }
      return p;
    } else {
      fail(source, "unsupported pre_tokenizer '" + type + "'");
    }
  }
  fail(source, "pre_tokenizer must end with ByteLevel");
}

std::pair<std::string, std::string> parse_merge(const json& m, std::size_t rank,
                                                std::string_view source) {
  if (m.is_string()) {
    const auto s = m.get<std::string>();
    const auto space = s.find(' ');
    if (space == std::string::npos || s.find(' ', space + 1) != std::string::npos) {
      fail(source, "merge " + std::to_string(rank) + " '" + s + "' is not a 'left right' pair");
    }
    return {s.substr(0, space), s.substr(space + 1)};
  }
  if (m.is_array() && m.size() == 2 && m[0].is_string() && m[1].is_string()) {
    return {m[0].get<std::string>(), m[1].get<std::string>()};
  }
  fail(source, "merge " + std::to_string(rank) + " is neither a string nor a pair");
}

bool is_whitespace_only(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t len = 0;
    const auto c = utf8::decode_at(s, pos, &len);
    if (!c || !unicode::is_whitespace(*c)) return false;
    pos += len;
  }
  return true;
}

}  // namespace

PaddingInfo derive_padding(const ModelParts& parts) {
  const std::size_t n = parts.vocab.size();
  PaddingInfo info{n, 0};
  if (n == 0 || !std::has_single_bit(n)) return info;
  std::vector<const AddedToken*> by_id(n, nullptr);
  for (const auto& tok : parts.added_tokens) {
    if (tok.id < n) by_id[tok.id] = &tok;
  }
  std::size_t count = 0;
  while (count < n) {
    const AddedToken* tok = by_id[n - 1 - count];
    if (tok == nullptr || tok->special || !is_whitespace_only(tok->content)) break;
    ++count;
  }
  return {n - count, count};
}

std::string to_json(const TokenizerModel& model) {
  const ModelParts& parts = model.parts();
  ordered root;
  root["version"] = "1.0";
  root["truncation"] = nullptr;
  root["padding"] = nullptr;

  ordered added = ordered::array();
  std::vector<const AddedToken*> sorted;
  for (const auto& tok : parts.added_tokens) sorted.push_back(&tok);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const AddedToken* a, const AddedToken* b) { return a->id < b->id; });
  for (const AddedToken* tok : sorted) {
    ordered j;
    j["id"] = tok->id;
    j["content"] = tok->content;
    j["single_word"] = tok->single_word;
    j["lstrip"] = tok->lstrip;
    j["rstrip"] = tok->rstrip;
    j["normalized"] = tok->normalized;
    j["special"] = tok->special;
    added.push_back(std::move(j));
  }
  root["added_tokens"] = std::move(added);
  root["normalizer"] = normalizer_json(parts.normalization);
  root["pre_tokenizer"] = pre_tokenizer_json(parts.pre_tokenizer);
  root["post_processor"] = nullptr;
  root["decoder"] = byte_level(true, true);

  // The vocabulary is written by hand: ordered_json objects insert in linear
  // time, which is quadratic over a 128K vocabulary.
  std::string out = root.dump(2, ' ', false);
  out.pop_back();  // closing brace
  out += ",\n  \"model\": {\n";
  out += "    \"type\": \"BPE\",\n";
  out += "    \"dropout\": null,\n";
  out += "    \"unk_token\": ";
  out += parts.unk_token ? ordered(*parts.unk_token).dump(-1, ' ', false) : "null";
  out += ",\n";
  out += "    \"continuing_subword_prefix\": null,\n";
  out += "    \"end_of_word_suffix\": null,\n";
  out += "    \"fuse_unk\": false,\n";
  out += "    \"byte_fallback\": false,\n";
  out += parts.ignore_merges ? "    \"ignore_merges\": true,\n" : "    \"ignore_merges\": false,\n";
  out += "    \"vocab\": {";
  for (std::size_t id = 0; id < parts.vocab.size(); ++id) {
    out += id == 0 ? "\n      " : ",\n      ";
    out += ordered(parts.vocab[id]).dump(-1, ' ', false);
    out += ": ";
    out += std::to_string(id);
  }
  out += parts.vocab.empty() ? "},\n" : "\n    },\n";
  out += "    \"merges\": [";
  for (std::size_t i = 0; i < parts.merges.size(); ++i) {
    out += i == 0 ? "\n      " : ",\n      ";
    out += ordered(parts.merges[i].left + " " + parts.merges[i].right).dump(-1, ' ', false);
  }
  out += parts.merges.empty() ? "]\n" : "\n    ]\n";
  out += "  }\n}\n";
  return out;
}

void save(const TokenizerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(model);
  if (!out) throw Error("write failed: " + path.string());
}

TokenizerModel from_json(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source, std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail(source, "top level is not an object");
  if (!root.contains("model")) fail(source, "missing 'model'");

  try {
    const json& m = root["model"];
    const std::string type = type_of(m);
    if (!type.empty() && type != "BPE") fail(source, "unsupported model type '" + type + "'");
    if (!m.contains("vocab") || !m["vocab"].is_object()) fail(source, "model.vocab must be an object");
    if (m.contains("dropout") && !m["dropout"].is_null() && m["dropout"].get<double>() > 0.0) {
      fail(source, "BPE dropout is not supported");
    }
    for (const char* key : {"continuing_subword_prefix", "end_of_word_suffix"}) {
      if (m.contains(key) && m[key].is_string() && !m[key].get<std::string>().empty()) {
        fail(source, std::string("model.") + key + " is not supported");
      }
    }

    ModelParts parts;
    parts.normalization = parse_normalizer(root.value("normalizer", json()), source);
    parts.pre_tokenizer = parse_pre_tokenizer(root.value("pre_tokenizer", json()), source);
    parts.normalization.space_prefix =
        parts.pre_tokenizer.kind == PreTokenizerConfig::Kind::space_adhering;

    std::vector<std::optional<std::string>> slots;
    auto place = [&](const std::string& token, std::uint64_t id) {
      if (id > (1u << 31)) fail(source, "token id " + std::to_string(id) + " is too large");
      if (slots.size() <= id) slots.resize(id + 1);
      if (slots[id] && *slots[id] != token) {
        fail(source, "duplicate id " + std::to_string(id) + " for '" + *slots[id] + "' and '" +
                         token + "'");
      }
      slots[id] = token;
    };
    for (const auto& [token, id] : m["vocab"].items()) {
      if (!id.is_number_unsigned()) fail(source, "vocab id for '" + token + "' is not an unsigned integer");
      place(token, id.get<std::uint64_t>());
    }

    if (root.contains("added_tokens") && !root["added_tokens"].is_null()) {
      for (const auto& a : root["added_tokens"]) {
        AddedToken tok;
        tok.content = a.at("content").get<std::string>();
        const auto id = a.at("id").get<std::uint64_t>();
        tok.id = static_cast<TokenId>(id);
        tok.single_word = a.value("single_word", false);
        tok.lstrip = a.value("lstrip", false);
        tok.rstrip = a.value("rstrip", false);
        tok.normalized = a.value("normalized", true);
        tok.special = a.value("special", false);
        place(tok.content, id);
        parts.added_tokens.push_back(std::move(tok));
      }
    }

    parts.vocab.reserve(slots.size());
    for (std::size_t id = 0; id < slots.size(); ++id) {
      if (!slots[id]) fail(source, "vocabulary has no token with id " + std::to_string(id));
      parts.vocab.push_back(*std::move(slots[id]));
    }

    if (m.contains("merges") && !m["merges"].is_null()) {
      std::size_t rank = 0;
      for (const auto& entry : m["merges"]) {
        auto [left, right] = parse_merge(entry, rank, source);
        parts.merges.push_back({left, right, left + right, rank});
        ++rank;
      }
    }

    if (m.contains("unk_token") && m["unk_token"].is_string()) {
      parts.unk_token = m["unk_token"].get<std::string>();
    }
    parts.ignore_merges = m.value("ignore_merges", false);

    for (const auto& tok : parts.added_tokens) {
      if (!tok.special) continue;
      if (auto role = guess_special_role(tok.content); role && !parts.specials.contains(*role)) {
        parts.specials[*role] = tok.id;
      }
    }
    if (parts.unk_token && !parts.specials.contains(SpecialRole::unknown)) {
      for (std::size_t id = 0; id < parts.vocab.size(); ++id) {
        if (parts.vocab[id] == *parts.unk_token) parts.specials[SpecialRole::unknown] = static_cast<TokenId>(id);
      }
    }
    parts.padding = derive_padding(parts);
    return TokenizerModel(std::move(parts));
  } catch (const ModelError& e) {
    fail(source, e.what());
  } catch (const json::exception& e) {
    fail(source, std::string("malformed tokenizer file: ") + e.what());
  }
}

TokenizerModel load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str(), path.string());
}

}  // namespace lextok
