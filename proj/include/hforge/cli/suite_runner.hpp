#pragma once

#include <ostream>
#include <vector>

#include "hforge/cli/config.hpp"
#include "hforge/cli/report_io.hpp"

namespace hforge::cli {

/// Runs every instance on up to `jobs` threads. Results keep the input order.
/// Library errors raised while computing become INADMISSIBLE reports carrying the message.
std::vector<TimedReport> run_suite(const std::vector<PreparedInstance>& instances, unsigned jobs);

/// Oracle checks for the special functions and the quadrature; one line per check.
/// Returns true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace hforge::cli
