#include "lextok/eval.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "lextok/error.hpp"
#include "lextok/runtime.hpp"
#include "lextok/utf8.hpp"

namespace lextok {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Fn>
void for_each_line(std::string_view content, Fn fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    pos = end + 1;
  }
}

Document make_document(std::string id, std::string text, const std::string& source, std::size_t line) {
  if (const auto bad = utf8::first_invalid(text)) {
    const std::string what = "invalid UTF-8 at byte " + std::to_string(*bad);
    if (line > 0) throw ParseError(source, line, what);
    throw Error(source + ": " + what);
  }
  const std::size_t chars = utf8::count_chars(text);
  return {std::move(id), std::move(text), chars};
}

unsigned worker_count(unsigned threads, std::size_t jobs) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, jobs)));
}

}  // namespace

std::string Ratio::format(int decimals) const {
  std::uint64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  // Integer rounding; num * scale stays far below 2^64 for corpus-sized counts.
  const std::uint64_t rounded = (num * scale + den / 2) / den;
  std::string whole = std::to_string(rounded / scale);
  if (decimals == 0) return whole;
  std::string frac = std::to_string(rounded % scale);
  frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
  return whole + "." + frac;
}

Corpus ingest_corpus(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  Corpus corpus;
  corpus.name = path.filename().empty() ? path.parent_path().filename().string() : path.stem().string();
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (fs::recursive_directory_iterator it(path, ec), end; !ec && it != end; it.increment(ec)) {
      if (it->is_regular_file() && it->path().extension() == ".txt") files.push_back(it->path());
    }
    if (ec) throw Error("cannot list " + path.string() + ": " + ec.message());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      corpus.documents.push_back(
          make_document(fs::relative(file, path).generic_string(), read_file(file), file.string(), 0));
    }
  } else if (fs::is_regular_file(path, ec)) {
    const std::string content = read_file(path);
    const std::string source = path.string();
    for_each_line(content, [&](std::size_t line_no, std::string_view line) {
      if (line.find_first_not_of(" \t") == std::string_view::npos) return;
      nlohmann::json record;
      try {
        record = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error&) {
        throw ParseError(source, line_no, "malformed JSON record");
      }
      if (!record.is_object() || !record.contains("text")) {
        throw ParseError(source, line_no, "record has no \"text\" field");
      }
      if (!record["text"].is_string()) throw ParseError(source, line_no, "\"text\" is not a string");
      std::string id = std::to_string(line_no);
      if (record.contains("id")) id = record["id"].is_string() ? record["id"].get<std::string>() : record["id"].dump();
      corpus.documents.push_back(make_document(std::move(id), record["text"].get<std::string>(), source, line_no));
    });
  } else {
    throw Error("corpus path not found: " + path.string());
  }
  for (const auto& d : corpus.documents) corpus.char_count += d.char_count;
  return corpus;
}

Corpus make_corpus(std::string name, const std::vector<std::string>& texts) {
  Corpus corpus;
  corpus.name = std::move(name);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    corpus.documents.push_back(make_document(std::to_string(i), texts[i], corpus.name, 0));
    corpus.char_count += corpus.documents.back().char_count;
  }
  return corpus;
}

std::size_t count_tokens(const TokenizerModel& model, std::string_view text) {
  return encode_ids(model, text).size();
}

TpcCell tokens_per_character(const NamedModel& model, const Corpus& corpus, unsigned threads) {
  if (corpus.char_count == 0) {
    throw ArgumentError("corpus '" + corpus.name + "' has no characters");
  }
  const std::size_t n = corpus.documents.size();
  const unsigned workers = worker_count(threads, n);
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t d = w; d < n; d += workers) {
        partial[w] += count_tokens(*model.model, corpus.documents[d].text);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  TpcCell cell{model.name, corpus.name, 0, corpus.char_count};
  for (auto p : partial) cell.tokens += p;
  return cell;
}

std::vector<TpcCell> total_token_counts(const std::vector<NamedModel>& models,
                                        const std::vector<Corpus>& corpora, unsigned threads) {
  std::vector<TpcCell> cells;
  for (const auto& m : models) {
    for (const auto& c : corpora) cells.push_back(tokens_per_character(m, c, threads));
  }
  return cells;
}

std::vector<Term> parse_terms(std::string_view content, std::string_view source) {
  std::vector<Term> terms;
  const std::string src(source);
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError(src, line_no, "expected 'domain<TAB>term'");
    if (!utf8::is_valid(line)) throw ParseError(src, line_no, "invalid UTF-8");
    terms.push_back({std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))});
  });
  return terms;
}

std::vector<Term> load_terms(const std::filesystem::path& path) {
  return parse_terms(read_file(path), path.string());
}

TermTable term_token_table(const std::vector<NamedModel>& models, const std::vector<Term>& terms) {
  TermTable table;
  table.terms = terms;
  for (const auto& m : models) {
    table.models.push_back(m.name);
    auto& row = table.counts.emplace_back();
    for (const auto& t : terms) row.push_back(count_tokens(*m.model, t.text));
  }
  return table;
}

DomainAverages term_table_averages(const TermTable& table) {
  DomainAverages out;
  std::vector<std::size_t> domain_of;
  for (const auto& t : table.terms) {
    auto it = std::find(out.domains.begin(), out.domains.end(), t.domain);
    if (it == out.domains.end()) {
      out.domains.push_back(t.domain);
      it = out.domains.end() - 1;
    }
    domain_of.push_back(static_cast<std::size_t>(it - out.domains.begin()));
  }
  const std::size_t d = out.domains.size();
  for (const auto& row : table.counts) {
    std::vector<std::uint64_t> sum(d, 0);
    std::vector<std::uint64_t> n(d, 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      sum[domain_of[i]] += row[i];
      n[domain_of[i]] += 1;
    }
    std::vector<Ratio> means;
    for (std::size_t k = 0; k < d; ++k) means.push_back({sum[k], n[k]});
    // Mean of means over a common denominator: sum_k sum_k/n_k = (sum_k sum_k * L/n_k) / L.
    std::uint64_t lcm = 1;
    for (auto c : n) lcm = std::lcm(lcm, c);
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < d; ++k) total += sum[k] * (lcm / n[k]);
    out.overall.push_back(d == 0 ? Ratio{0, 1} : Ratio{total, lcm * d});
    out.by_model.push_back(std::move(means));
  }
  return out;
}

Ratio SizeDistribution::bucket(std::size_t length) const {
  return {counts.at(length - 1), std::max<std::size_t>(vocab_size, 1)};
}
Ratio SizeDistribution::up_to_five() const {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < 5; ++i) n += counts[i];
  return {n, std::max<std::size_t>(vocab_size, 1)};
}
Ratio SizeDistribution::six_to_ten() const {
  std::uint64_t n = 0;
  for (std::size_t i = 5; i < 10; ++i) n += counts[i];
  return {n, std::max<std::size_t>(vocab_size, 1)};
}
Ratio SizeDistribution::up_to_ten() const {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < 10; ++i) n += counts[i];
  return {n, std::max<std::size_t>(vocab_size, 1)};
}

SizeDistribution size_distribution_from_lengths(std::string model, const std::vector<std::size_t>& lengths) {
  SizeDistribution dist;
  dist.model = std::move(model);
  dist.vocab_size = lengths.size();
  for (auto len : lengths) dist.counts[std::min<std::size_t>(std::max<std::size_t>(len, 1), 11) - 1]++;
  dist.coverage = {lengths.size(), std::max<std::size_t>(lengths.size(), 1)};
  return dist;
}

SizeDistribution token_size_distribution(const NamedModel& model) {
  const TokenizerModel& m = *model.model;
  std::vector<std::size_t> lengths;
  lengths.reserve(m.size());
  std::uint64_t complete = 0;
  for (TokenId id = 0; id < m.size(); ++id) {
    lengths.push_back(display_length(m, id));
    if (utf8::is_valid(m.surface_bytes(id))) ++complete;
  }
  SizeDistribution dist = size_distribution_from_lengths(model.name, lengths);
  dist.coverage = {complete, std::max<std::size_t>(m.size(), 1)};
  return dist;
}

std::vector<TextPair> parse_pairs(std::string_view content, std::string_view source) {
  std::vector<TextPair> pairs;
  const std::string src(source);
  for_each_line(content, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError(src, line_no, "expected 'error<TAB>correct'");
    if (!utf8::is_valid(line)) throw ParseError(src, line_no, "invalid UTF-8");
    pairs.push_back({std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))});
  });
  return pairs;
}

std::vector<TextPair> load_pairs(const std::filesystem::path& path) {
  return parse_pairs(read_file(path), path.string());
}

std::vector<AlignmentRow> error_alignment_report(const std::vector<NamedModel>& models,
                                                 const std::vector<TextPair>& pairs) {
  std::vector<AlignmentRow> rows;
  for (const auto& m : models) {
    for (const auto& p : pairs) {
      AlignmentRow row;
      row.model = m.name;
      row.pair = p;
      row.error_surfaces = encode(*m.model, p.error).surfaces;
      row.correct_surfaces = encode(*m.model, p.correct).surfaces;
      std::map<std::string, std::size_t> pool;
      for (const auto& s : row.error_surfaces) ++pool[s];
      for (const auto& s : row.correct_surfaces) {
        if (auto it = pool.find(s); it != pool.end() && it->second > 0) {
          --it->second;
          ++row.shared;
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace lextok
