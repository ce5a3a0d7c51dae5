#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hforge/funcspace.hpp"
#include "hforge/inequalities.hpp"

namespace hforge::cli {

inline constexpr int kConfigVersion = 1;
inline constexpr int kReportVersion = 1;

/// What the config author declares about an instance's hypotheses.
enum class Expectation { Admissible, Inadmissible, Any };

struct OutputSpec {
  std::string format = "json";
  std::string path;
};

struct SuiteConfig {
  int version = kConfigVersion;
  std::vector<std::string> inequalities;
  /// Raw family entries; each is a template plus an optional "grid".
  std::vector<nlohmann::json> families;
  double quadrature_tol = 1e-8;
  double series_tol = 1e-8;
  Caps caps = default_caps();
  std::int64_t max_head = 1 << 13;
  OutputSpec output;
};

/// One concrete, validated instance ready to run.
struct PreparedInstance {
  std::string inequality_id;
  Expectation expect = Expectation::Admissible;
  nlohmann::json spec;
  std::function<VerificationReport()> run;
};

bool is_known_inequality(const std::string& id);

/// Throws ConfigError on any structural problem.
SuiteConfig parse_config(const nlohmann::json& doc);
SuiteConfig load_config(const std::string& path);

/// Cartesian product of the family's "grid" substituted into the template
/// (dotted keys address nested fields). Grid keys vary fastest from the last.
std::vector<nlohmann::json> expand_family(const nlohmann::json& family);

/// Expands and validates every selected family before anything is computed.
/// Throws ConfigError naming the family index and the offending field.
std::vector<PreparedInstance> prepare_instances(const SuiteConfig& config);

}  // namespace hforge::cli
