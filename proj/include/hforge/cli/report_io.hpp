#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hforge/cli/config.hpp"
#include "hforge/inequalities.hpp"

namespace hforge::cli {

struct TimedReport {
  VerificationReport report;
  Expectation expect = Expectation::Admissible;
  double wall_time_ms = 0.0;
};

struct Tally {
  std::size_t holds = 0;
  std::size_t holds_within_error = 0;
  std::size_t violated = 0;
  std::size_t inadmissible = 0;
  /// Reports whose admissibility contradicts the config's declaration.
  std::size_t unexpected = 0;
};

Tally tally(const std::vector<TimedReport>& reports);

bool expectation_met(const TimedReport& r);

/// Report document: {version, metadata, summary, reports[]}. Only metadata and
/// the per-report wall_time_ms vary between identical runs.
nlohmann::ordered_json report_document(const std::vector<TimedReport>& reports, const nlohmann::ordered_json& metadata);

/// Serializes with floats at 17 significant digits, non-finite as null,
/// two-space indentation and a trailing newline.
std::string dump_json(const nlohmann::ordered_json& doc);

void write_reports_csv(std::ostream& out, const std::vector<TimedReport>& reports);
void write_reports_text(std::ostream& out, const std::vector<TimedReport>& reports);

struct CompareOutcome {
  bool byte_identical = false;
  /// True when every numeric field agrees within tolerance and every other field is equal.
  bool within_tolerance = false;
  std::vector<std::string> differences;
};

/// Compares two report documents with metadata and wall_time_ms removed.
/// Numbers agree when |a - b| <= tol * max(1, |a|, |b|).
CompareOutcome compare_reports(const std::string& current, const std::string& baseline, double tol);

/// The comparison subset of a report document as canonical text.
std::string comparison_subset(const std::string& document);

}  // namespace hforge::cli
