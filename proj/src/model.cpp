#include "lextok/model.hpp"

#include <algorithm>
#include <cctype>

#include "lextok/added_tokens.hpp"
#include "lextok/byte_remap.hpp"
#include "lextok/error.hpp"

namespace lextok {

namespace {

std::uint64_t pair_key(TokenId left, TokenId right) {
  return (static_cast<std::uint64_t>(left) << 32) | right;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view to_string(SpecialRole role) {
  switch (role) {
    case SpecialRole::start: return "start";
    case SpecialRole::end: return "end";
    case SpecialRole::pad: return "pad";
    case SpecialRole::unknown: return "unknown";
    case SpecialRole::separator: return "separator";
    case SpecialRole::classifier: return "classifier";
    case SpecialRole::mask: return "mask";
  }
  return "?";
}

std::string default_special_surface(SpecialRole role) {
  switch (role) {
    case SpecialRole::start: return "<|start|>";
    case SpecialRole::end: return "<|end|>";
    case SpecialRole::pad: return "<|pad|>";
    case SpecialRole::unknown: return "<|unk|>";
    case SpecialRole::separator: return "<|sep|>";
    case SpecialRole::classifier: return "<|cls|>";
    case SpecialRole::mask: return "<|mask|>";
  }
  return {};
}

std::optional<SpecialRole> guess_special_role(std::string_view surface) {
  static const std::pair<std::string_view, SpecialRole> kKnown[] = {
      {"<|start|>", SpecialRole::start},     {"<s>", SpecialRole::start},
      {"<|begin_of_text|>", SpecialRole::start}, {"<bos>", SpecialRole::start},
      {"[bos]", SpecialRole::start},         {"<|startoftext|>", SpecialRole::start},
      {"<|end|>", SpecialRole::end},         {"</s>", SpecialRole::end},
      {"<|end_of_text|>", SpecialRole::end}, {"<|endoftext|>", SpecialRole::end},
      {"<eos>", SpecialRole::end},           {"[eos]", SpecialRole::end},
      {"<|pad|>", SpecialRole::pad},         {"<pad>", SpecialRole::pad},
      {"[pad]", SpecialRole::pad},           {"<|unk|>", SpecialRole::unknown},
      {"<unk>", SpecialRole::unknown},       {"[unk]", SpecialRole::unknown},
      {"<|sep|>", SpecialRole::separator},   {"<sep>", SpecialRole::separator},
      {"[sep]", SpecialRole::separator},     {"<|cls|>", SpecialRole::classifier},
      {"<cls>", SpecialRole::classifier},    {"[cls]", SpecialRole::classifier},
      {"<|mask|>", SpecialRole::mask},       {"<mask>", SpecialRole::mask},
      {"[mask]", SpecialRole::mask},
  };
  const std::string lowered = lower_ascii(surface);
  for (const auto& [name, role] : kKnown) {
    if (lowered == name) return role;
  }
  return std::nullopt;
}

TokenizerModel::TokenizerModel(ModelParts parts) : parts_(std::move(parts)) {
  const std::size_t n = parts_.vocab.size();
  index_.reserve(n);
  for (std::size_t id = 0; id < n; ++id) {
    if (!index_.emplace(parts_.vocab[id], static_cast<TokenId>(id)).second) {
      throw ModelError("duplicate token '" + parts_.vocab[id] + "' at id " + std::to_string(id));
    }
  }

  added_index_.assign(n, -1);
  for (std::size_t i = 0; i < parts_.added_tokens.size(); ++i) {
    const AddedToken& tok = parts_.added_tokens[i];
    if (tok.id >= n) {
      throw ModelError("added token '" + tok.content + "' has id " + std::to_string(tok.id) +
                       " outside the vocabulary");
    }
    if (parts_.vocab[tok.id] != tok.content) {
      throw ModelError("added token '" + tok.content + "' does not match vocabulary entry " +
                       std::to_string(tok.id));
    }
    if (tok.content.empty()) throw ModelError("empty added token at id " + std::to_string(tok.id));
    if (added_index_[tok.id] >= 0) {
      throw ModelError("added token id " + std::to_string(tok.id) + " registered twice");
    }
    added_index_[tok.id] = static_cast<int>(i);
  }

  for (const auto& [role, id] : parts_.specials) {
    if (id >= n) {
      throw ModelError("special '" + std::string(to_string(role)) + "' has id " +
                       std::to_string(id) + " outside the vocabulary");
    }
  }
  if (parts_.unk_token && !index_.contains(*parts_.unk_token)) {
    throw ModelError("unknown token '" + *parts_.unk_token + "' is not in the vocabulary");
  }

  merge_table_.reserve(parts_.merges.size());
  for (std::size_t rank = 0; rank < parts_.merges.size(); ++rank) {
    MergeRule& rule = parts_.merges[rank];
    const auto left = index_.find(rule.left);
    const auto right = index_.find(rule.right);
    if (rule.merged.empty()) rule.merged = rule.left + rule.right;
    const auto merged = index_.find(rule.merged);
    if (left == index_.end() || right == index_.end() || merged == index_.end()) {
      throw ModelError("merge " + std::to_string(rank) + " ('" + rule.left + "' '" + rule.right +
                       "') references a token missing from the vocabulary");
    }
    if (rule.merged != rule.left + rule.right) {
      throw ModelError("merge " + std::to_string(rank) + " result is not the concatenation");
    }
    if (rule.rank != rank) throw ModelError("merge ranks must be dense and in order");
    // A pair listed twice keeps its first (lowest) rank.
    merge_table_.emplace(pair_key(left->second, right->second), MergeTarget{rank, merged->second});
  }

  surfaces_.resize(n);
  for (std::size_t id = 0; id < n; ++id) {
    if (added_index_[id] >= 0) {
      surfaces_[id] = parts_.vocab[id];
    } else if (auto bytes = try_inverse_byte_remap(parts_.vocab[id])) {
      surfaces_[id] = *std::move(bytes);
    } else {
      surfaces_[id] = parts_.vocab[id];
    }
  }

  byte_tokens_.assign(256, -1);
  for (unsigned b = 0; b < 256; ++b) {
    if (auto it = index_.find(byte_symbol(static_cast<std::uint8_t>(b))); it != index_.end()) {
      byte_tokens_[b] = it->second;
    }
  }

  pre_tokenizer_ = std::make_shared<const PreTokenizer>(parts_.pre_tokenizer);

  std::vector<const AddedToken*> raw;
  std::vector<const AddedToken*> normalized;
  for (const AddedToken& tok : parts_.added_tokens) (tok.normalized ? normalized : raw).push_back(&tok);
  raw_matcher_ = std::make_shared<const AddedTokenMatcher>(raw);

  // Normalized tokens are matched against normalized text, so their own
  // content is normalized the same way before building the matcher.
  std::vector<AddedToken> normalized_copies;
  normalized_copies.reserve(normalized.size());
  for (const AddedToken* tok : normalized) {
    AddedToken copy = *tok;
    copy.content = normalize(tok->content, parts_.normalization);
    normalized_copies.push_back(std::move(copy));
  }
  std::vector<const AddedToken*> normalized_ptrs;
  for (const auto& tok : normalized_copies) normalized_ptrs.push_back(&tok);
  normalized_matcher_ = std::make_shared<const AddedTokenMatcher>(normalized_ptrs);
}

std::optional<TokenId> TokenizerModel::find(std::string_view token) const {
  if (auto it = index_.find(std::string(token)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::optional<TokenId> TokenizerModel::special(SpecialRole role) const {
  if (auto it = parts_.specials.find(role); it != parts_.specials.end()) return it->second;
  return std::nullopt;
}

bool TokenizerModel::is_special(TokenId id) const {
  const AddedToken* tok = added_token(id);
  return tok != nullptr && tok->special;
}

const AddedToken* TokenizerModel::added_token(TokenId id) const {
  if (id >= added_index_.size() || added_index_[id] < 0) return nullptr;
  return &parts_.added_tokens[static_cast<std::size_t>(added_index_[id])];
}

std::optional<TokenId> TokenizerModel::byte_token(std::uint8_t b) const {
  if (byte_tokens_[b] < 0) return std::nullopt;
  return static_cast<TokenId>(byte_tokens_[b]);
}

std::optional<TokenizerModel::MergeTarget> TokenizerModel::merge_for(TokenId left,
                                                                     TokenId right) const {
  if (auto it = merge_table_.find(pair_key(left, right)); it != merge_table_.end()) {
    return it->second;
  }
  return std::nullopt;
}

}  // namespace lextok
