#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "hforge/inequalities.hpp"
#include "hforge/specialfn.hpp"

namespace hforge {

/// One point of a sharpness sweep. probe is T (integral) or N (discrete).
struct ProbeResult {
  double probe = 0.0;
  double lhs = 0.0;
  double lhs_error = 0.0;
  double rhs = 0.0;
  double rhs_error = 0.0;
  double ratio = 0.0;
};

enum class SharpnessMode { Integral, Discrete };

/// f = x^(-1/p), g = y^(-1/q) on [1, T] against the classical integral bound.
/// Both norms then equal ln T. Throws DomainError unless T > 1.
ProbeResult extremal_ratio_integral(const HolderPair& pair, double T, double tol = 1e-10);

/// a_m = m^(-1/p), b_n = n^(-1/q) for m, n <= N against the classical discrete bound.
/// Throws DomainError unless N >= 2, ToleranceUnreachable when N*N exceeds the pair cap.
ProbeResult extremal_ratio_discrete(const HolderPair& pair, std::int64_t N, double tol = 1e-10);

/// Probes in the given order, computed concurrently on up to `jobs` threads.
std::vector<ProbeResult> sharpness_sweep(const HolderPair& pair, SharpnessMode mode, std::span<const double> probes,
                                         double tol = 1e-10, unsigned jobs = 1);

/// True when every ratio lies in (0, 1) within its error and the ratios
/// strictly increase along the (sorted) probe order.
bool monotone_approach(std::span<const ProbeResult> results);

/// Header "probe,lhs,lhs_error,rhs,rhs_error,ratio" followed by one row per probe.
void write_sharpness_csv(std::ostream& out, std::span<const ProbeResult> results);

/// Error bound on the ratio lhs/rhs from the errors of the two sides.
double ratio_error(const ProbeResult& r);

}  // namespace hforge
