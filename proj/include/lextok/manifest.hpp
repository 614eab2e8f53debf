#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lextok/model.hpp"

namespace lextok {

/// A local tokenizer file pinned by content hash.
struct ManifestEntry {
  std::string name;
  std::filesystem::path path;  // absolute, or relative to the manifest
  std::string sha256;          // lowercase hex
};

/// JSON object {"models": {"<name>": {"path": "...", "sha256": "..."}}}.
/// Relative paths resolve against the manifest's directory. Throws
/// LoadError.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);
std::vector<ManifestEntry> parse_manifest(std::string_view json, const std::filesystem::path& base_dir,
                                          std::string_view source = "<manifest>");

const ManifestEntry* find_entry(const std::vector<ManifestEntry>& entries, std::string_view name);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Loads the file after checking its hash. Throws LoadError on a missing
/// file or a hash mismatch.
TokenizerModel load_pinned(const ManifestEntry& entry);

}  // namespace lextok
