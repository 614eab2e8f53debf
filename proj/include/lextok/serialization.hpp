#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lextok/model.hpp"

namespace lextok {

/// Tokenizer JSON interchange format (model type "BPE", byte-level
/// pre-tokenizer). Output is byte-deterministic for a given model.
std::string to_json(const TokenizerModel& model);
void save(const TokenizerModel& model, const std::filesystem::path& path);

/// Parses a tokenizer file. Merges may be "left right" strings or two-element
/// arrays. Special roles are recognized from token surfaces and padding is
/// re-derived with derive_padding. Throws LoadError.
TokenizerModel from_json(std::string_view json, std::string_view source = "<memory>");
TokenizerModel load(const std::filesystem::path& path);

/// Padding implied by a vocabulary: when its size is a power of two, the
/// trailing run of non-special added tokens made only of whitespace.
PaddingInfo derive_padding(const ModelParts& parts);

}  // namespace lextok
