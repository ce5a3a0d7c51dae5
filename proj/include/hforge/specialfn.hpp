#pragma once

#include <array>

#include "hforge/kernel_params.hpp"

namespace hforge {

/// Conjugate exponents p, q > 1 with 1/p + 1/q = 1. q is always derived from p.
class HolderPair {
 public:
  /// Throws DomainError unless p is finite and p > 1.
  explicit HolderPair(double p);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  /// The pair with the roles of p and q exchanged (bitwise, no recomputation).
  HolderPair swapped() const noexcept;

 private:
  HolderPair(double p, double q) noexcept : p_(p), q_(q) {}
  double p_;
  double q_;
};

/// How the shifted constant C' and the shifted y-weight are formed.
///
/// Homogeneous: C' = G(l/p + g - n) G(l/q - g - n) / G(l), y-weight q(n+1) + q g - l - 1.
///   Both sides then scale identically under x -> cx, and the admissible
///   interval g in (n - l/p, l/q - n) is exactly the positivity region.
/// Literal: C' = G(l/p - g - n) G(l/q - g - n) / G(l), y-weight q(n+1) - q g - l - 1.
///   Kept for exploration; it is not dilation invariant when g != 0.
enum class ShiftConvention { Homogeneous, Literal };

struct BoundConstants {
  double c;
  double c_prime;
  /// Gamma arguments in order: l/p - n, l/q - n, and the two C' arguments.
  std::array<double, 4> gamma_args;
};

double gamma(double x);
double log_gamma(double x);

/// pi / sin(pi/p), symmetric under p <-> q.
double hilbert_constant(const HolderPair& pair);

/// C = G(l/p - n) G(l/q - n) / G(l); requires l/p > n and l/q > n.
double constant_c(const HolderPair& pair, const KernelParams& params);

/// C and C' assembled in log space. Throws DomainError naming the first
/// nonpositive Gamma argument.
BoundConstants bound_constants(const HolderPair& pair, const KernelParams& params,
                               ShiftConvention convention = ShiftConvention::Literal);

}  // namespace hforge
