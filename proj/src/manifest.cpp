#include "lextok/manifest.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "lextok/error.hpp"
#include "lextok/serialization.hpp"

namespace lextok {

namespace {

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string lower_hex(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'F') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                                          std::string_view source) {
  const std::string src(source);
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LoadError(src + ": invalid JSON: " + e.what());
  }
  if (!root.is_object() || !root.contains("models") || !root["models"].is_object()) {
    throw LoadError(src + ": expected an object with a \"models\" object");
  }
  std::vector<ManifestEntry> entries;
  for (const auto& [name, spec] : root["models"].items()) {
    if (!spec.is_object() || !spec.contains("path") || !spec["path"].is_string() ||
        !spec.contains("sha256") || !spec["sha256"].is_string()) {
      throw LoadError(src + ": model '" + name + "' needs string \"path\" and \"sha256\"");
    }
    std::filesystem::path p = spec["path"].get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    const std::string hash = lower_hex(spec["sha256"].get<std::string>());
    if (hash.size() != 64 || hash.find_first_not_of("0123456789abcdef") != std::string::npos) {
      throw LoadError(src + ": model '" + name + "' has a malformed sha256");
    }
    entries.push_back({name, p, hash});
  }
  return entries;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_all(path), path.parent_path(), path.string());
}

const ManifestEntry* find_entry(const std::vector<ManifestEntry>& entries, std::string_view name) {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_all(path)); }

TokenizerModel load_pinned(const ManifestEntry& entry) {
  const std::string bytes = read_all(entry.path);
  const std::string actual = sha256_hex(bytes);
  if (actual != entry.sha256) {
    throw LoadError(entry.path.string() + ": sha256 " + actual + " does not match the pinned " + entry.sha256);
  }
  return from_json(bytes, entry.path.string());
}

}  // namespace lextok
