#include "hforge/cli/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hforge/errors.hpp"
#include "hforge/numfmt.hpp"

namespace hforge::cli {

using nlohmann::ordered_json;

namespace {

ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) {
    return nullptr;
  }
  return v;
}

void write_string(std::string& out, const std::string& s) {
  // nlohmann escapes strings correctly and keeps UTF-8 as is.
  out += ordered_json(s).dump();
}

void write_value(std::string& out, const ordered_json& v, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (v.type()) {
    case ordered_json::value_t::null:
      out += "null";
      break;
    case ordered_json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case ordered_json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      break;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      break;
    case ordered_json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_17(d) : "null";
      break;
    }
    case ordered_json::value_t::string:
      write_string(out, v.get<std::string>());
      break;
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += pad;
        write_value(out, v[i], depth + 1);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      out += close + "]";
      break;
    }
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = v.begin(); it != v.end(); ++it, ++i) {
        out += pad;
        write_string(out, it.key());
        out += ": ";
        write_value(out, it.value(), depth + 1);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      out += close + "}";
      break;
    }
    default:
      out += "null";
  }
}

ordered_json strip_volatile(ordered_json doc) {
  if (doc.is_object()) {
    doc.erase("metadata");
    if (doc.contains("reports") && doc.at("reports").is_array()) {
      for (auto& r : doc.at("reports")) {
        if (r.is_object()) r.erase("wall_time_ms");
      }
    }
  }
  return doc;
}

ordered_json parse_report(const std::string& text, const char* which) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string(which) + " report is not valid JSON: " + e.what());
  }
}

void diff_values(const ordered_json& a, const ordered_json& b, const std::string& path, double tol,
                 std::vector<std::string>& out) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>();
    const double y = b.get<double>();
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    if (!(std::abs(x - y) <= tol * scale)) {
      out.push_back(path + ": " + format_17(x) + " vs " + format_17(y));
    }
    return;
  }
  if (a.type() != b.type()) {
    out.push_back(path + ": type differs");
    return;
  }
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) {
        out.push_back(path + "." + it.key() + ": missing in baseline");
      } else {
        diff_values(it.value(), b.at(it.key()), path + "." + it.key(), tol, out);
      }
    }
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (!a.contains(it.key())) {
        out.push_back(path + "." + it.key() + ": missing in current");
      }
    }
    return;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      out.push_back(path + ": length " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      diff_values(a[i], b[i], path + "[" + std::to_string(i) + "]", tol, out);
    }
    return;
  }
  if (a != b) {
    out.push_back(path + ": " + a.dump() + " vs " + b.dump());
  }
}

}  // namespace

bool expectation_met(const TimedReport& r) {
  const bool inadmissible = r.report.verdict == Verdict::Inadmissible;
  switch (r.expect) {
    case Expectation::Admissible:
      return !inadmissible;
    case Expectation::Inadmissible:
      return inadmissible;
    case Expectation::Any:
      return true;
  }
  return true;
}

Tally tally(const std::vector<TimedReport>& reports) {
  Tally t;
  for (const auto& r : reports) {
    switch (r.report.verdict) {
      case Verdict::Holds:
        ++t.holds;
        break;
      case Verdict::HoldsWithinError:
        ++t.holds_within_error;
        break;
      case Verdict::Violated:
        ++t.violated;
        break;
      case Verdict::Inadmissible:
        ++t.inadmissible;
        break;
    }
    if (!expectation_met(r)) {
      ++t.unexpected;
    }
  }
  return t;
}

ordered_json report_document(const std::vector<TimedReport>& reports, const ordered_json& metadata) {
  ordered_json doc;
  doc["version"] = kReportVersion;
  doc["metadata"] = metadata;
  const Tally t = tally(reports);
  doc["summary"] = {{"total", reports.size()},
                    {"holds", t.holds},
                    {"holds_within_error", t.holds_within_error},
                    {"violated", t.violated},
                    {"inadmissible", t.inadmissible},
                    {"unexpected_admissibility", t.unexpected}};
  ordered_json list = ordered_json::array();
  for (const auto& tr : reports) {
    const VerificationReport& r = tr.report;
    ordered_json e;
    e["version"] = kReportVersion;
    e["inequality_id"] = r.inequality_id;
    e["instance_descriptor"] = r.instance_descriptor;
    e["lhs"] = number_or_null(r.lhs);
    e["lhs_error"] = number_or_null(r.lhs_error);
    e["rhs"] = number_or_null(r.rhs);
    e["rhs_error"] = number_or_null(r.rhs_error);
    e["ratio"] = number_or_null(r.ratio);
    e["verdict"] = verdict_name(r.verdict);
    e["wall_time_ms"] = tr.wall_time_ms;
    e["notes"] = r.notes;
    list.push_back(std::move(e));
  }
  doc["reports"] = std::move(list);
  return doc;
}

std::string dump_json(const ordered_json& doc) {
  std::string out;
  write_value(out, doc, 0);
  out += '\n';
  return out;
}

void write_reports_csv(std::ostream& out, const std::vector<TimedReport>& reports) {
  out << "inequality_id,verdict,lhs,lhs_error,rhs,rhs_error,ratio,instance_descriptor\n";
  for (const auto& tr : reports) {
    const VerificationReport& r = tr.report;
    std::string desc = r.instance_descriptor;
    std::string quoted = "\"";
    for (char c : desc) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    out << r.inequality_id << ',' << verdict_name(r.verdict) << ',' << format_17(r.lhs) << ','
        << format_17(r.lhs_error) << ',' << format_17(r.rhs) << ',' << format_17(r.rhs_error) << ','
        << format_17(r.ratio) << ',' << quoted << '\n';
  }
}

void write_reports_text(std::ostream& out, const std::vector<TimedReport>& reports) {
  for (const auto& tr : reports) {
    const VerificationReport& r = tr.report;
    out << r.inequality_id << "  " << verdict_name(r.verdict);
    if (r.verdict != Verdict::Inadmissible) {
      out << "  lhs=" << format_shortest(r.lhs) << " (+-" << format_shortest(r.lhs_error)
          << ")  rhs=" << format_shortest(r.rhs) << " (+-" << format_shortest(r.rhs_error)
          << ")  ratio=" << format_shortest(r.ratio);
    }
    out << "\n    " << r.instance_descriptor << '\n';
    for (const auto& n : r.notes) {
      out << "    note: " << n << '\n';
    }
  }
  const Tally t = tally(reports);
  out << reports.size() << " instances: " << t.holds << " HOLDS, " << t.holds_within_error << " HOLDS_WITHIN_ERROR, "
      << t.violated << " VIOLATED, " << t.inadmissible << " INADMISSIBLE";
  if (t.unexpected) {
    out << ", " << t.unexpected << " contradict the declared admissibility";
  }
  out << '\n';
}

std::string comparison_subset(const std::string& document) {
  return dump_json(strip_volatile(parse_report(document, "current")));
}

CompareOutcome compare_reports(const std::string& current, const std::string& baseline, double tol) {
  const ordered_json a = strip_volatile(parse_report(current, "current"));
  const ordered_json b = strip_volatile(parse_report(baseline, "baseline"));
  CompareOutcome out;
  out.byte_identical = dump_json(a) == dump_json(b);
  if (!out.byte_identical) {
    diff_values(a, b, "$", tol, out.differences);
  }
  out.within_tolerance = out.differences.empty();
  return out;
}

}  // namespace hforge::cli
