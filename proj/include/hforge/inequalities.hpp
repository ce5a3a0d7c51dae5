#pragma once

#include <span>
#include <string>
#include <vector>

#include "hforge/funcspace.hpp"
#include "hforge/specialfn.hpp"

namespace hforge {

enum class Verdict { Holds, HoldsWithinError, Violated, Inadmissible };

const char* verdict_name(Verdict v) noexcept;

/// Both sides of one inequality instance with their error budgets.
/// Every report is oriented so that the inequality asserts lhs <= rhs.
struct VerificationReport {
  std::string inequality_id;
  double lhs = 0.0;
  double lhs_error = 0.0;
  double rhs = 0.0;
  double rhs_error = 0.0;
  double ratio = 0.0;
  Verdict verdict = Verdict::Inadmissible;
  std::string instance_descriptor;
  /// Violated hypotheses for INADMISSIBLE reports, non-convergence notes otherwise.
  std::vector<std::string> notes;
};

/// Applies the verdict rule: HOLDS iff lhs + lhs_error <= rhs - rhs_error,
/// VIOLATED iff lhs - lhs_error > rhs + rhs_error, otherwise HOLDS_WITHIN_ERROR.
VerificationReport make_report(std::string id, std::string descriptor, double lhs, double lhs_error, double rhs,
                               double rhs_error);

VerificationReport inadmissible_report(std::string id, std::string descriptor, std::vector<std::string> reasons);

/// Stable wire identifiers of the verifiers.
namespace ids {
inline constexpr const char* kHilbertIntegral = "hilbert_integral";
inline constexpr const char* kHilbertDiscrete = "hilbert_discrete";
inline constexpr const char* kOffsetDiscrete = "lemma_2_2";
inline constexpr const char* kWeightedC = "lemma_2_3";
inline constexpr const char* kWeightedCPrime = "lemma_2_4";
inline constexpr const char* kSumDiscrete = "thm_2_1";
inline constexpr const char* kSumIntegral = "thm_2_2";
inline constexpr const char* kSuperadditivity = "lemma_2_1";
}  // namespace ids

struct VerifyOptions {
  /// Target for every numerical stage: absolute below magnitude 1, relative above.
  double tol = 1e-8;
  Caps caps = default_caps();
  ShiftConvention convention = ShiftConvention::Homogeneous;
  /// Longest head for infinite sequences in the double sums.
  std::int64_t max_head = 1 << 13;
};

enum class WeightVariant { C, CPrime };

struct SumDiscreteInstance {
  SequenceFamily a;  ///< start 1
  SequenceFamily b;  ///< start 1
  SequenceFamily c;  ///< start 0
  SequenceFamily d;  ///< start 0
  HolderPair pair;
  int k = 1;
};

struct SumIntegralInstance {
  TestFunction f;
  TestFunction g;
  HolderPair pair;
  KernelParams params;
  int m = 1;
};

VerificationReport verify_hilbert_integral(const TestFunction& f, const TestFunction& g, const HolderPair& pair,
                                           const VerifyOptions& opts = {});

VerificationReport verify_hilbert_discrete(const SequenceFamily& a, const SequenceFamily& b,
                                           const HolderPair& pair, const VerifyOptions& opts = {});

VerificationReport verify_lemma_offset_discrete(const SequenceFamily& c, const SequenceFamily& d,
                                                const HolderPair& pair, const VerifyOptions& opts = {});

/// k c0 d0 + sum_{m,n>=1} (a_m b_n/(m+n) + k c_m d_n/(m+n+1)) against
/// K (k c0^p + sum_{m>=1} (a_m^p + k c_m^p))^(1/p) (k d0^q + sum_{m>=1} (b_m^q + k d_m^q))^(1/q).
VerificationReport verify_sum_discrete(const SumDiscreteInstance& inst, const VerifyOptions& opts = {});

VerificationReport verify_weighted_integral(const TestFunction& f, const TestFunction& g, const HolderPair& pair,
                                            const KernelParams& params, WeightVariant variant,
                                            const VerifyOptions& opts = {});

VerificationReport verify_sum_integral(const SumIntegralInstance& inst, const VerifyOptions& opts = {});

/// Weighted norms behind the multiplicity-m integral bound:
/// c_* use the C-weight, c_prime_* the C'-weight; *_f with power p, *_g with power q.
struct WeightedNorms {
  double c_f, c_f_err, c_prime_f, c_prime_f_err;
  double c_g, c_g_err, c_prime_g, c_prime_g_err;
};

WeightedNorms weighted_norms(const TestFunction& f, const TestFunction& g, const HolderPair& pair,
                             const KernelParams& params, const VerifyOptions& opts = {});

/// Prod (a_i + b_i)^alpha_i >= Prod a_i^alpha_i + Prod b_i^alpha_i, reported with
/// lhs = Prod a^alpha + Prod b^alpha and rhs = Prod (a + b)^alpha.
VerificationReport check_superadditivity(std::span<const double> a, std::span<const double> b,
                                         std::span<const double> alphas);

}  // namespace hforge
