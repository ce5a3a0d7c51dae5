#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "hforge/kernel_params.hpp"
#include "hforge/specialfn.hpp"

namespace hforge {

// ---------------------------------------------------------------------------
// Test functions
// ---------------------------------------------------------------------------

/// f(x) = scale * x^s * exp(-b x) on [0, inf). scale = 0 gives the zero function.
struct MonomialExponential {
  double s = 0.0;
  double b = 1.0;
  double scale = 1.0;
};

/// f(x) = x^exponent on [lower, upper], zero elsewhere. Order-0 use only.
struct TruncatedPowerFn {
  double exponent = 0.0;
  double lower = 1.0;
  double upper = 2.0;
};

/// Closed interval outside of which a function vanishes; upper may be +inf.
struct Support {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

class TestFunction {
 public:
  using Family = std::variant<MonomialExponential, TruncatedPowerFn>;

  /// Throws DomainError on out-of-range parameters.
  explicit TestFunction(Family family, std::string description = {});

  static TestFunction monomial_exponential(double s, double b, double scale = 1.0);
  static TestFunction truncated_power(double exponent, double lower, double upper);

  const Family& family() const noexcept { return family_; }
  const std::string& description() const noexcept { return description_; }

  double operator()(double x) const { return derivative(0, x); }
  double derivative(int order, double x) const;

  Support support() const noexcept;
  bool is_zero() const noexcept;

  /// Largest derivative order with a closed form.
  int max_order() const noexcept;

  /// e such that f^(order)(x) ~ const * x^e as x -> 0+, when the support reaches 0.
  double leading_exponent_at_zero(int order) const;

 private:
  Family family_;
  std::string description_;
};

/// f^(order)(x) in closed form. DomainError for unsupported (family, order) pairs or x < 0.
double eval_derivative(const TestFunction& f, int order, double x);

/// Which weighted integrals a function must keep finite.
enum class WeightSet { C, CPrime, Both };

/// Which side of the inequality a function sits on: f pairs with p, g with q.
enum class Side { First, Second };

/// Violated conditions for KernelParams against a pair (empty when valid).
std::vector<std::string> validate_kernel_params(const HolderPair& pair, const KernelParams& params);

/// Exponents of the x^w weights multiplying (f^(n))^r in the weighted norms.
struct WeightExponents {
  double c_weight;       ///< r(n+1) - l - 1
  double c_prime_weight; ///< r(n+1) - r g - l - 1 (First) or convention-dependent (Second)
};

WeightExponents weight_exponents(const HolderPair& pair, const KernelParams& params, Side side,
                                 ShiftConvention convention = ShiftConvention::Homogeneous);

/// Number of points and range of the positivity sampling grid.
inline constexpr int kPositivityGridPoints = 256;
inline constexpr double kPositivityGridLow = 1e-6;
inline constexpr double kPositivityGridHigh = 1e3;

/// Admissibility verdict: list of violated hypotheses (empty means admissible).
std::vector<std::string> check_admissible(const TestFunction& f, const HolderPair& pair,
                                          const KernelParams& params, Side side = Side::First,
                                          WeightSet weights = WeightSet::Both,
                                          ShiftConvention convention = ShiftConvention::Homogeneous);

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

/// a_m = scale * (m - start + 1)^(-alpha): the first term equals scale.
struct PowerDecay {
  double alpha = 1.0;
  double scale = 1.0;
};

/// a_m = scale * r^m for m >= start.
struct Geometric {
  double r = 0.5;
  double scale = 1.0;
};

/// a_{start + i} = values[i], zero beyond the list.
struct Explicit {
  std::vector<double> values;
};

/// a_m = (m - start + 1)^exponent for the first cutoff terms, zero beyond.
struct TruncatedPowerSeq {
  double exponent = -0.5;
  std::int64_t cutoff = 2;
};

class SequenceFamily {
 public:
  using Family = std::variant<PowerDecay, Geometric, Explicit, TruncatedPowerSeq>;

  /// Throws DomainError for invalid parameters or a start index other than 0 or 1.
  SequenceFamily(Family family, int start_index);

  const Family& family() const noexcept { return family_; }
  int start_index() const noexcept { return start_; }

  /// Term a_m; zero for m < start_index.
  double term(std::int64_t m) const;

  /// Index one past the last nonzero term, or -1 when the support is infinite.
  std::int64_t finite_end() const noexcept;

  bool is_zero() const noexcept;

  /// Terms a_start .. a_{start+count-1}.
  std::vector<double> head(std::int64_t count) const;

  std::string describe() const;

  /// Same family with the first `count` terms (from start_index) forced to zero.
  SequenceFamily without_leading(std::int64_t count) const;

  /// First index whose term may be nonzero.
  std::int64_t first_index() const noexcept { return start_ + dropped_; }

 private:
  Family family_;
  int start_;
  std::int64_t dropped_ = 0;
};

struct SumWithBound {
  double value;
  double error_bound;
};

/// Caps shared by every truncated computation.
struct Caps {
  std::int64_t max_terms = 100'000'000;           ///< single-series terms
  std::int64_t max_pairs = 16'000'000'000;        ///< double-series (m, n) pairs
  std::int64_t max_evaluations = 1'000'000;       ///< integrand evaluations per integral
};

/// Caps with HILBERT_FORGE_CAP applied: it sets max_terms and max_evaluations,
/// and max_pairs = 160 * max_terms.
Caps default_caps();

/// Sum of a_m^p over the support with |true - value| <= error_bound <= tol.
/// Throws DomainError when the sequence is not p-summable and
/// ToleranceUnreachable when tol needs more than caps.max_terms terms.
SumWithBound lp_norm_power(const SequenceFamily& seq, double p, double tol, const Caps& caps = default_caps());

/// Sum of a_m^p over indices m >= from (tail mass), same guarantees as lp_norm_power.
SumWithBound lp_tail_power(const SequenceFamily& seq, double p, std::int64_t from, double tol,
                           const Caps& caps = default_caps());

}  // namespace hforge
