#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lextok/normalization.hpp"
#include "lextok/pretokenizer.hpp"

namespace lextok {

using TokenId = std::uint32_t;

/// A ranked pair-join. `merged == left + right`; lower rank applies first.
struct MergeRule {
  std::string left;
  std::string right;
  std::string merged;
  std::size_t rank = 0;
  friend bool operator==(const MergeRule&, const MergeRule&) = default;
};

/// A token matched atomically on the text before splitting and merging.
/// `content` is literal text, not byte-remapped symbols.
struct AddedToken {
  std::string content;
  TokenId id = 0;
  bool single_word = false;
  bool lstrip = false;
  bool rstrip = false;
  bool normalized = true;
  bool special = false;
  friend bool operator==(const AddedToken&, const AddedToken&) = default;
};

enum class SpecialRole { start, end, pad, unknown, separator, classifier, mask };

inline constexpr SpecialRole kAllRoles[] = {
    SpecialRole::start,     SpecialRole::end,        SpecialRole::pad,  SpecialRole::unknown,
    SpecialRole::separator, SpecialRole::classifier, SpecialRole::mask,
};

std::string_view to_string(SpecialRole role);
/// Default surfaces of the special inventory, e.g. "<|start|>".
std::string default_special_surface(SpecialRole role);
/// Recognizes common special-token spellings ("<s>", "[CLS]", "<|endoftext|>"...).
std::optional<SpecialRole> guess_special_role(std::string_view surface);

/// Where the learned vocabulary ended and padding began.
struct PaddingInfo {
  std::size_t unpadded_size = 0;
  std::size_t filler_count = 0;
  friend bool operator==(const PaddingInfo&, const PaddingInfo&) = default;
};

/// Plain parts of a model. `vocab[i]` is the token string with id i; learned
/// tokens are byte-remapped symbols, added tokens hold literal content.
struct ModelParts {
  NormalizationConfig normalization;
  PreTokenizerConfig pre_tokenizer;
  std::vector<std::string> vocab;
  std::vector<MergeRule> merges;
  std::vector<AddedToken> added_tokens;  // registration order
  std::map<SpecialRole, TokenId> specials;
  std::optional<std::string> unk_token;
  bool ignore_merges = false;
  PaddingInfo padding;

  friend bool operator==(const ModelParts&, const ModelParts&) = default;
};

class AddedTokenMatcher;

/// An immutable, validated tokenizer. Construction checks the invariants
/// (dense unique ids, merges closed over the vocabulary, specials and added
/// tokens in range) and builds lookup tables; afterwards every member is
/// const and the object can be shared across threads.
class TokenizerModel {
 public:
  explicit TokenizerModel(ModelParts parts);

  const ModelParts& parts() const { return parts_; }
  const NormalizationConfig& normalization() const { return parts_.normalization; }
  const PreTokenizer& pre_tokenizer() const { return *pre_tokenizer_; }
  std::size_t size() const { return parts_.vocab.size(); }
  const std::string& token(TokenId id) const { return parts_.vocab.at(id); }
  std::optional<TokenId> find(std::string_view token) const;
  std::optional<TokenId> special(SpecialRole role) const;

  bool is_added(TokenId id) const { return added_index_[id] >= 0; }
  bool is_special(TokenId id) const;
  const AddedToken* added_token(TokenId id) const;

  /// Literal bytes a token stands for (inverse byte remap for learned
  /// tokens, content for added tokens). May be partial UTF-8.
  const std::string& surface_bytes(TokenId id) const { return surfaces_[id]; }

  /// Id of the single-symbol token for byte `b`, if present.
  std::optional<TokenId> byte_token(std::uint8_t b) const;

  struct MergeTarget {
    std::size_t rank;
    TokenId merged;
  };
  std::optional<MergeTarget> merge_for(TokenId left, TokenId right) const;

  const AddedTokenMatcher& raw_matcher() const { return *raw_matcher_; }
  const AddedTokenMatcher& normalized_matcher() const { return *normalized_matcher_; }

  friend bool operator==(const TokenizerModel& a, const TokenizerModel& b) {
    return a.parts_ == b.parts_;
  }

 private:
  ModelParts parts_;
  std::unordered_map<std::string, TokenId> index_;
  std::vector<int> added_index_;
  std::vector<std::string> surfaces_;
  std::vector<std::int64_t> byte_tokens_;
  std::unordered_map<std::uint64_t, MergeTarget> merge_table_;
  std::shared_ptr<const PreTokenizer> pre_tokenizer_;
  std::shared_ptr<const AddedTokenMatcher> raw_matcher_;
  std::shared_ptr<const AddedTokenMatcher> normalized_matcher_;
};

}  // namespace lextok
