#pragma once

#include <cstdint>
#include <optional>

#include "hforge/funcspace.hpp"

namespace hforge {

struct SeriesResult {
  double value = 0.0;
  double error_bound = 0.0;
  /// Head length used per infinite sequence (0 when both are finite).
  std::int64_t head_terms = 0;
  bool converged = true;
};

struct SeriesOptions {
  Caps caps = default_caps();
  /// When false, an unreachable tolerance returns the best value with converged = false.
  bool strict = true;
  /// Exponent of the conjugate pair the caller works with; tried first for tail bounds.
  std::optional<double> hint_p;
  /// Longest head evaluated for an infinite sequence.
  std::int64_t max_head = 1 << 15;
};

/// sum_{m,n} a_m b_n / (m + n + offset) by diagonal resummation.
///
/// offset 0 requires both sequences to start at 1, offset 1 at 0 (IndexMismatch
/// otherwise). Finite sequences are summed exactly; infinite ones are truncated
/// to a square head and the two strips beyond it are bounded by the smaller of
///   K_p ||a_tail||_p ||b||_q      (the classical inequality, any valid pair)
///   ||a_tail||_1 ||b||_1 / (m_min + n_min + offset).
/// The value is the head plus half the strip bound; tol is absolute for values
/// up to 1 and relative above. The result is invariant under swapping a and b.
SeriesResult double_sum_kernel(const SequenceFamily& a, const SequenceFamily& b, int offset, double tol,
                               const SeriesOptions& opts = {});

}  // namespace hforge
