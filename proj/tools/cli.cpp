#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lextok/catalog.hpp"
#include "lextok/error.hpp"
#include "lextok/eval.hpp"
#include "lextok/manifest.hpp"
#include "lextok/report.hpp"
#include "lextok/runtime.hpp"
#include "lextok/serialization.hpp"
#include "lextok/trainer.hpp"

namespace lextok::cli {

namespace {

namespace fs = std::filesystem;

// Missing or conflicting flags; exits like a parse error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string preset;
  std::vector<std::string> corpus;
  std::vector<std::string> models;
  std::string out;
  std::string format = "markdown";
  std::string terms;
  std::string pairs;
  std::string manifest;
  bool json = false;
  bool skip_specials = false;
  std::vector<std::string> positional;
};

// Reads all of `in` as lines; a final line without '\n' still counts.
std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<NamedModel> resolve_models(const Options& o) {
  std::vector<NamedModel> models;
  for (const auto& path : o.models) {
    models.push_back({fs::path(path).stem().string(), std::make_shared<const TokenizerModel>(load(path))});
  }
  if (!o.manifest.empty()) {
    for (const auto& entry : load_manifest(o.manifest)) {
      models.push_back({entry.name, std::make_shared<const TokenizerModel>(load_pinned(entry))});
    }
  }
  if (models.empty()) throw UsageError("no models given (use --model or --manifest)");
  return models;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + o.out);
  f << text;
}

void emit_report(const Options& o, EvalReport report, std::ostream& out) {
  auto meta = standard_metadata();
  meta.insert(meta.end(), report.metadata.begin(), report.metadata.end());
  report.metadata = std::move(meta);
  emit(o, render_report(report, parse_report_format(o.format)), out);
}

TrainerConfig training_config(const Options& o) {
  if (!o.config.empty()) return load_trainer_config(o.config);
  return trainer_preset(o.preset.empty() ? "domain-64k" : o.preset);
}

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.corpus.empty()) throw UsageError("train needs --corpus");
  if (o.out.empty()) throw UsageError("train needs --out");
  const TrainerConfig config = training_config(o);
  std::vector<std::string> documents;
  for (const auto& path : o.corpus) {
    for (auto& d : ingest_corpus(path).documents) documents.push_back(std::move(d.text));
  }
  err << "training on " << documents.size() << " documents\n";
  const TokenizerModel model = train(documents, config);
  save(model, o.out);
  out << o.out << ": " << model.size() << " tokens, " << model.parts().merges.size() << " merges, "
      << model.parts().padding.filler_count << " fillers\n";
  return kExitOk;
}

int cmd_encode(const Options& o, std::istream& in, std::ostream& out) {
  if (o.models.size() != 1) throw UsageError("encode needs exactly one --model");
  const TokenizerModel model = load(o.models.front());
  const auto lines = o.positional.empty() ? read_lines(in) : o.positional;
  for (const auto& line : lines) {
    if (o.json) {
      const EncodeResult r = encode(model, line);
      nlohmann::json j;
      j["ids"] = r.ids;
      j["tokens"] = r.surfaces;
      auto offsets = nlohmann::json::array();
      for (const auto& range : r.offsets) offsets.push_back({range.start, range.end});
      j["offsets"] = std::move(offsets);
      out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
      continue;
    }
    const auto ids = encode_ids(model, line);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out << ' ';
      out << ids[i];
    }
    out << '\n';
  }
  return kExitOk;
}

std::vector<TokenId> parse_ids(std::string_view line) {
  std::vector<TokenId> ids;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == ',')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != ',') ++end;
    const auto token = line.substr(pos, end - pos);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value > 0xFFFFFFFFu) {
      throw ArgumentError("'" + std::string(token) + "' is not a token id");
    }
    ids.push_back(static_cast<TokenId>(value));
    pos = end;
  }
  return ids;
}

int cmd_decode(const Options& o, std::istream& in, std::ostream& out) {
  if (o.models.size() != 1) throw UsageError("decode needs exactly one --model");
  const TokenizerModel model = load(o.models.front());
  std::vector<std::string> lines;
  if (o.positional.empty()) {
    lines = read_lines(in);
  } else {
    std::string joined;
    for (const auto& p : o.positional) joined += p + " ";
    lines.push_back(joined);
  }
  for (const auto& line : lines) {
    std::string_view view = line;
    if (o.json) {
      const auto j = nlohmann::json::parse(line);
      const auto ids = j.is_object() ? j.at("ids").get<std::vector<TokenId>>() : j.get<std::vector<TokenId>>();
      out << decode(model, ids, {o.skip_specials}) << '\n';
      continue;
    }
    out << decode(model, parse_ids(view), {o.skip_specials}) << '\n';
  }
  return kExitOk;
}

int cmd_inspect(const Options& o, std::ostream& out) {
  std::vector<std::string> paths = o.models;
  paths.insert(paths.end(), o.positional.begin(), o.positional.end());
  if (paths.size() != 1) throw UsageError("inspect needs one model file");
  const TokenizerModel model = load(paths.front());
  const VocabReport r = vocab_report(model);
  const auto& parts = model.parts();
  const bool pow2 = r.size != 0 && (r.size & (r.size - 1)) == 0;
  if (o.json) {
    nlohmann::ordered_json j;
    j["size"] = r.size;
    j["power_of_two"] = pow2;
    j["merges"] = parts.merges.size();
    j["specials"] = r.specials;
    j["added"] = r.added;
    j["unpadded_size"] = parts.padding.unpadded_size;
    j["fillers"] = parts.padding.filler_count;
    j["longest_learned"] = r.longest;
    j["longest"] = r.longest_overall;
    j["by_length"] = r.by_length;
    nlohmann::ordered_json roles = nlohmann::ordered_json::object();
    for (const auto& [role, id] : parts.specials) roles[std::string(to_string(role))] = id;
    j["special_roles"] = std::move(roles);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "size\t" << r.size << "\n";
  out << "power_of_two\t" << (pow2 ? "yes" : "no") << "\n";
  out << "merges\t" << parts.merges.size() << "\n";
  out << "specials\t" << r.specials << "\n";
  out << "added\t" << r.added << "\n";
  out << "unpadded_size\t" << parts.padding.unpadded_size << "\n";
  out << "fillers\t" << parts.padding.filler_count << "\n";
  out << "longest_learned\t" << r.longest << "\n";
  out << "longest\t" << r.longest_overall << "\n";
  for (std::size_t i = 0; i < r.by_length.size(); ++i) {
    out << "length_" << (i == 10 ? std::string(">10") : std::to_string(i + 1)) << "\t" << r.by_length[i] << "\n";
  }
  for (const auto& [role, id] : parts.specials) {
    out << "special_" << to_string(role) << "\t" << id << "\n";
  }
  return kExitOk;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  const TrainerConfig config = training_config(o);
  CatalogConfig cc = config.catalog;
  cc.case_mode = config.normalization.case_mode;
  emit(o, export_catalog(assemble_catalog(cc)), out);
  return kExitOk;
}

int cmd_eval_tpc(const Options& o, std::ostream& out) {
  if (o.corpus.empty()) throw UsageError("eval-tpc needs --corpus");
  const auto models = resolve_models(o);
  std::vector<Corpus> corpora;
  for (const auto& p : o.corpus) corpora.push_back(ingest_corpus(p));
  EvalReport report;
  report.tpc = total_token_counts(models, corpora);
  emit_report(o, std::move(report), out);
  return kExitOk;
}

int cmd_eval_terms(const Options& o, std::ostream& out) {
  if (o.terms.empty()) throw UsageError("eval-terms needs --terms");
  const auto models = resolve_models(o);
  EvalReport report;
  report.terms = term_token_table(models, load_terms(o.terms));
  emit_report(o, std::move(report), out);
  return kExitOk;
}

int cmd_eval_sizes(const Options& o, std::ostream& out) {
  const auto models = resolve_models(o);
  EvalReport report;
  report.sizes.emplace();
  for (const auto& m : models) report.sizes->push_back(token_size_distribution(m));
  emit_report(o, std::move(report), out);
  return kExitOk;
}

int cmd_eval_align(const Options& o, std::ostream& out) {
  if (o.pairs.empty()) throw UsageError("eval-align needs --pairs");
  const auto models = resolve_models(o);
  EvalReport report;
  report.alignment = error_alignment_report(models, load_pairs(o.pairs));
  emit_report(o, std::move(report), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Byte-level BPE tokenizer training, encoding and evaluation", "lextok"};
  app.require_subcommand(1);
  Options o;

  auto add_models = [&](CLI::App* sub) { sub->add_option("--model", o.models, "Tokenizer file (repeatable)")->expected(1)->allow_extra_args(false)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll); };
  auto add_report = [&](CLI::App* sub) {
    sub->add_option("--manifest", o.manifest, "Pinned models: name -> path + sha256");
    sub->add_option("--format", o.format, "markdown or csv")->check(CLI::IsMember({"markdown", "csv"}));
    sub->add_option("--out", o.out, "Write the report here instead of stdout");
  };

  auto* train_cmd = app.add_subcommand("train", "Train a tokenizer");
  train_cmd->add_option("--config", o.config, "Trainer config file");
  train_cmd->add_option("--preset", o.preset, "Preset when no config is given");
  train_cmd->add_option("--corpus", o.corpus, "Corpus directory or records file (repeatable)")->expected(1)->allow_extra_args(false)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  train_cmd->add_option("--out", o.out, "Output tokenizer file");

  auto* encode_cmd = app.add_subcommand("encode", "Text to ids, one output line per input line");
  add_models(encode_cmd);
  encode_cmd->add_flag("--json", o.json, "Ids, tokens and offsets as JSON records");
  encode_cmd->add_option("text", o.positional, "Texts to encode (default: stdin lines)");

  auto* decode_cmd = app.add_subcommand("decode", "Ids to text");
  add_models(decode_cmd);
  decode_cmd->add_flag("--json", o.json, "Input lines are JSON arrays or encode --json records");
  decode_cmd->add_flag("--skip-specials", o.skip_specials, "Drop special tokens");
  decode_cmd->add_option("ids", o.positional, "Ids (default: stdin lines)");

  auto* inspect_cmd = app.add_subcommand("inspect", "Vocabulary summary");
  add_models(inspect_cmd);
  inspect_cmd->add_flag("--json", o.json, "JSON output");
  inspect_cmd->add_option("file", o.positional, "Tokenizer file");

  auto* catalog_cmd = app.add_subcommand("catalog", "Export the custom-token catalog");
  catalog_cmd->add_option("--config", o.config, "Trainer config file");
  catalog_cmd->add_option("--preset", o.preset, "Preset when no config is given");
  catalog_cmd->add_option("--out", o.out, "Output file");

  auto* tpc_cmd = app.add_subcommand("eval-tpc", "Tokens per character and token totals");
  add_models(tpc_cmd);
  add_report(tpc_cmd);
  tpc_cmd->add_option("--corpus", o.corpus, "Corpus (repeatable)")->expected(1)->allow_extra_args(false)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* terms_cmd = app.add_subcommand("eval-terms", "Token counts of domain terms");
  add_models(terms_cmd);
  add_report(terms_cmd);
  terms_cmd->add_option("--terms", o.terms, "domain<TAB>term file");

  auto* sizes_cmd = app.add_subcommand("eval-sizes", "Vocabulary token size distribution");
  add_models(sizes_cmd);
  add_report(sizes_cmd);

  auto* align_cmd = app.add_subcommand("eval-align", "Tokenization of error/correct text pairs");
  add_models(align_cmd);
  add_report(align_cmd);
  align_cmd->add_option("--pairs", o.pairs, "error<TAB>correct file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (train_cmd->parsed()) return cmd_train(o, out, err);
    if (encode_cmd->parsed()) return cmd_encode(o, in, out);
    if (decode_cmd->parsed()) return cmd_decode(o, in, out);
    if (inspect_cmd->parsed()) return cmd_inspect(o, out);
    if (catalog_cmd->parsed()) return cmd_catalog(o, out);
    if (tpc_cmd->parsed()) return cmd_eval_tpc(o, out);
    if (terms_cmd->parsed()) return cmd_eval_terms(o, out);
    if (sizes_cmd->parsed()) return cmd_eval_sizes(o, out);
    if (align_cmd->parsed()) return cmd_eval_align(o, out);
  } catch (const UsageError& e) {
    err << "lextok: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "lextok: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace lextok::cli
