#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lextok/eval.hpp"

namespace lextok {

/// Collected evaluation results. Sections left empty are not rendered; a
/// section holding no rows renders as its header alone.
struct EvalReport {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::optional<std::vector<TpcCell>> tpc;  // also rendered as token totals
  std::optional<TermTable> terms;           // also rendered as domain averages
  std::optional<std::vector<SizeDistribution>> sizes;
  std::optional<std::vector<AlignmentRow>> alignment;
};

/// Conventions every report states: raw-text character counting,
/// body-only token counts, token length measurement.
std::vector<std::pair<std::string, std::string>> standard_metadata();

enum class ReportFormat { markdown, csv };

ReportFormat parse_report_format(std::string_view name);  // throws ArgumentError

/// Markdown: one "## section" heading and pipe table per section. CSV: one
/// RFC 4180 block per section with its own header row, blocks separated by a
/// blank line. Both carry the same data rows. TPC shows 4 decimals,
/// averages 2, percentages 1.
std::string render_report(const EvalReport& report, ReportFormat format);

}  // namespace lextok
