#include "lextok/report.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "lextok/error.hpp"

namespace lextok {

namespace {

using Row = std::vector<std::string>;

struct Table {
  std::string title;
  Row header;
  std::vector<Row> rows;
};

std::string with_commas(std::uint64_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  const std::size_t lead = digits.size() % 3;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (i - lead) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string percent(const Ratio& r) {
  return Ratio{r.num * 100, r.den}.format(1) + "%";
}

// Surfaces as a JSON array so spaces and control characters stay visible.
std::string surface_list(const std::vector<std::string>& surfaces) {
  return nlohmann::json(surfaces).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

template <typename T>
std::vector<std::string> unique_in_order(const std::vector<T>& cells, std::string T::*field) {
  std::vector<std::string> out;
  for (const auto& c : cells) {
    if (std::find(out.begin(), out.end(), c.*field) == out.end()) out.push_back(c.*field);
  }
  return out;
}

std::vector<Table> build_tables(const EvalReport& report) {
  std::vector<Table> tables;
  {
    Table t{"Metadata", {"Key", "Value"}, {}};
    for (const auto& [k, v] : report.metadata) t.rows.push_back({k, v});
    tables.push_back(std::move(t));
  }

  if (report.tpc) {
    const auto& cells = *report.tpc;
    const auto models = unique_in_order(cells, &TpcCell::model);
    const auto corpora = unique_in_order(cells, &TpcCell::corpus);
    auto find = [&](const std::string& m, const std::string& c) -> const TpcCell* {
      for (const auto& cell : cells) {
        if (cell.model == m && cell.corpus == c) return &cell;
      }
      return nullptr;
    };
    Table tpc{"Tokens per character", {"Corpus", "Characters"}, {}};
    Table totals{"Total tokens", {"Corpus", "Characters"}, {}};
    for (const auto& m : models) {
      tpc.header.push_back(m);
      totals.header.push_back(m);
    }
    for (const auto& c : corpora) {
      std::uint64_t chars = 0;
      for (const auto& cell : cells) {
        if (cell.corpus == c) chars = cell.chars;
      }
      Row a{c, std::to_string(chars)};
      Row b{c, std::to_string(chars)};
      for (const auto& m : models) {
        const TpcCell* cell = find(m, c);
        a.push_back(cell ? cell->tpc().format(4) : "");
        b.push_back(cell ? std::to_string(cell->tokens) : "");
      }
      tpc.rows.push_back(std::move(a));
      totals.rows.push_back(std::move(b));
    }
    tables.push_back(std::move(tpc));
    tables.push_back(std::move(totals));
  }

  if (report.terms) {
    const TermTable& tt = *report.terms;
    Table terms{"Term token counts", {"Domain", "Term"}, {}};
    for (const auto& m : tt.models) terms.header.push_back(m);
    for (std::size_t i = 0; i < tt.terms.size(); ++i) {
      Row r{tt.terms[i].domain, tt.terms[i].text};
      for (std::size_t m = 0; m < tt.models.size(); ++m) r.push_back(std::to_string(tt.counts[m][i]));
      terms.rows.push_back(std::move(r));
    }
    tables.push_back(std::move(terms));

    const DomainAverages avg = term_table_averages(tt);
    Table averages{"Average tokens by domain", {"Domain"}, {}};
    for (const auto& m : tt.models) averages.header.push_back(m);
    if (!tt.terms.empty()) {
      for (std::size_t d = 0; d < avg.domains.size(); ++d) {
        Row r{avg.domains[d]};
        for (std::size_t m = 0; m < tt.models.size(); ++m) r.push_back(avg.by_model[m][d].format(2));
        averages.rows.push_back(std::move(r));
      }
      Row overall{"Overall"};
      for (std::size_t m = 0; m < tt.models.size(); ++m) overall.push_back(avg.overall[m].format(2));
      averages.rows.push_back(std::move(overall));
    }
    tables.push_back(std::move(averages));
  }

  if (report.sizes) {
    const auto& dists = *report.sizes;
    Table t{"Token size distribution", {"Length"}, {}};
    for (const auto& d : dists) t.header.push_back(d.model);
    if (!dists.empty()) {
      for (std::size_t len = 1; len <= 11; ++len) {
        Row r{len == 11 ? ">10" : std::to_string(len)};
        for (const auto& d : dists) r.push_back(percent(d.bucket(len)));
        t.rows.push_back(std::move(r));
      }
      Row le5{"<=5"}, mid{"6-10"}, le10{"<=10"}, size{"Vocabulary"}, cov{"Coverage"};
      for (const auto& d : dists) {
        le5.push_back(percent(d.up_to_five()));
        mid.push_back(percent(d.six_to_ten()));
        le10.push_back(percent(d.up_to_ten()));
        size.push_back(std::to_string(d.vocab_size));
        cov.push_back(percent(d.coverage));
      }
      for (Row* r : {&le5, &mid, &le10, &size, &cov}) t.rows.push_back(std::move(*r));
    }
    tables.push_back(std::move(t));
  }

  if (report.alignment) {
    Table t{"Error alignment",
            {"Model", "Error text", "Correct text", "Error tokens", "Correct tokens", "Shared",
             "Error surfaces", "Correct surfaces"},
            {}};
    for (const auto& row : *report.alignment) {
      t.rows.push_back({row.model, row.pair.error, row.pair.correct,
                        std::to_string(row.error_surfaces.size()),
                        std::to_string(row.correct_surfaces.size()), std::to_string(row.shared),
                        surface_list(row.error_surfaces), surface_list(row.correct_surfaces)});
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

std::string markdown_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += "<br>";
    } else if (c != '\r') {
      out += c;
    }
  }
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool numeric_column(const Table& t, std::size_t col) {
  if (t.rows.empty() || col == 0) return false;
  for (const auto& r : t.rows) {
    if (r[col].empty() || r[col].find_first_not_of("0123456789.,%") != std::string::npos) return false;
  }
  return true;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> standard_metadata() {
  return {
      {"characters", "Unicode scalar values of the raw document text, before normalization"},
      {"tokens", "body tokens only; task wrapper specials are not counted"},
      {"token_length", "decoded characters with one leading space excluded; partial UTF-8 counts as one"},
      {"rounding", "tokens per character 4 decimals, averages 2, percentages 1"},
  };
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::markdown;
  if (name == "csv") return ReportFormat::csv;
  throw ArgumentError("unknown report format '" + std::string(name) + "'");
}

std::string render_report(const EvalReport& report, ReportFormat format) {
  const auto tables = build_tables(report);
  std::string out;
  bool first = true;
  for (const Table& t : tables) {
    if (!first) out += format == ReportFormat::csv ? "\r\n" : "\n";
    first = false;
    if (format == ReportFormat::csv) {
      auto line = [&](const Row& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
          if (i) out += ',';
          out += csv_cell(r[i]);
        }
        out += "\r\n";
      };
      line(t.header);
      for (const auto& r : t.rows) line(r);
      continue;
    }
    out += "## " + t.title + "\n\n";
    out += "|";
    for (const auto& h : t.header) out += " " + markdown_cell(h) + " |";
    out += "\n|";
    for (std::size_t c = 0; c < t.header.size(); ++c) out += numeric_column(t, c) ? " ---: |" : " --- |";
    out += "\n";
    for (const auto& r : t.rows) {
      out += "|";
      for (std::size_t c = 0; c < r.size(); ++c) {
        const bool totals = t.title == "Total tokens" && c >= 1;
        const std::string cell = totals && !r[c].empty() ? with_commas(std::stoull(r[c])) : r[c];
        out += " " + markdown_cell(cell) + " |";
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace lextok
