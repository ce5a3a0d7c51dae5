#pragma once

#include <cstdint>
#include <functional>
#include <limits>

#include "hforge/funcspace.hpp"

namespace hforge {

/// Outcome of an adaptive integration. Error bounds are Gauss–Kronrod
/// estimates, tested against known values but not rigorous enclosures.
struct QuadResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

/// Converged when error_bound <= max(abs_tol, rel_tol * |value|).
struct QuadOptions {
  double abs_tol = 1e-8;
  double rel_tol = 0.0;
  /// Refinement stops before exceeding this; the initial panel layout is always evaluated.
  std::int64_t max_evaluations = 1'000'000;

  double target(double value) const noexcept;
};

using Integrand = std::function<double(double)>;

/// Integral of f over [lower, upper] with 0 <= lower < upper <= inf.
/// [lower, inf) pieces beyond 1 are mapped to (0, 1] by x = c/t. Panels are
/// graded geometrically toward 0, toward the mapped infinity, and across
/// ranges spanning several octaves. Non-finite samples throw DomainError.
QuadResult integrate_range(const Integrand& f, double lower, double upper, const QuadOptions& opts);

/// Integral of f over (0, inf) to absolute tolerance tol.
QuadResult integrate_semi_infinite(const Integrand& f, double tol);
QuadResult integrate_semi_infinite(const Integrand& f, const QuadOptions& opts);

/// Double integral of f(x) g(y) / (x+y)^lambda over the positive quadrant via
/// x = s u, y = s (1-u): int_0^inf s^(1-lambda) int_0^1 f(su) g(s(1-u)) du ds.
/// Budget: outer quadrature error <= tol/2, integrated inner error <= tol/4,
/// the rest reserved for composition. Throws DivergenceDetected when the
/// exponent at s = 0 makes the integral infinite.
QuadResult integrate_kernel_double(const TestFunction& f, const TestFunction& g, double lambda, double tol);
QuadResult integrate_kernel_double(const TestFunction& f, const TestFunction& g, double lambda,
                                   const QuadOptions& opts);

/// Weighted power norm int_0^inf x^weight |f^(order)(x)|^power dx over the support of f.
QuadResult integrate_weighted_power(const TestFunction& f, int order, double weight, double power,
                                    const QuadOptions& opts);

}  // namespace hforge
