#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hforge/errors.hpp"
#include "hforge/inequalities.hpp"
#include "hforge/series.hpp"

using namespace hforge;

namespace {

constexpr double kPi = std::numbers::pi;

SequenceFamily explicit_seq(std::vector<double> v, int start) { return SequenceFamily(Explicit{std::move(v)}, start); }
SequenceFamily zero_seq(int start) { return explicit_seq({0.0}, start); }

void check_holds_rule(const VerificationReport& r) {
  if (r.verdict == Verdict::Holds) {
    CHECK(r.lhs + r.lhs_error <= r.rhs - r.rhs_error);
    CHECK(r.ratio <= 1.0 + (r.lhs_error + r.rhs_error) / r.rhs);
  }
  CHECK(r.verdict != Verdict::Violated);
}

bool close(double a, double ea, double b, double eb) { return std::abs(a - b) <= ea + eb + 1e-14 * std::abs(a); }

}  // namespace

TEST_CASE("verdict rule") {
  CHECK(make_report("x", "", 1.0, 0.1, 2.0, 0.1).verdict == Verdict::Holds);
  CHECK(make_report("x", "", 1.95, 0.1, 2.0, 0.1).verdict == Verdict::HoldsWithinError);
  CHECK(make_report("x", "", 2.5, 0.1, 2.0, 0.1).verdict == Verdict::Violated);
  CHECK(make_report("x", "", 1.0, 0.0, 0.0, 0.0).ratio == 0.0);
  CHECK(std::string(verdict_name(Verdict::HoldsWithinError)) == "HOLDS_WITHIN_ERROR");
}

TEST_CASE("classical integral inequality examples") {
  const TestFunction e = TestFunction::monomial_exponential(0.0, 1.0);
  const VerificationReport r = verify_hilbert_integral(e, e, HolderPair(2.0));
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.rhs == doctest::Approx(kPi / 2.0).epsilon(1e-10));
  const TestFunction xe = TestFunction::monomial_exponential(1.0, 1.0);
  const VerificationReport s = verify_hilbert_integral(xe, xe, HolderPair(2.0));
  CHECK(s.verdict == Verdict::Holds);
  CHECK(s.lhs == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(s.rhs == doctest::Approx(kPi / 4.0).epsilon(1e-10));
  const TestFunction zero = TestFunction::monomial_exponential(0.0, 1.0, 0.0);
  CHECK(verify_hilbert_integral(zero, zero, HolderPair(2.0)).verdict == Verdict::Inadmissible);
}

TEST_CASE("classical discrete inequality examples") {
  const SequenceFamily g(Geometric{0.5, 1.0}, 1);
  const VerificationReport r = verify_hilbert_discrete(g, g, HolderPair(2.0));
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.lhs == doctest::Approx(0.306852819440054690582767878542).epsilon(1e-10));
  CHECK(r.rhs == doctest::Approx(kPi / 3.0).epsilon(1e-12));
  const VerificationReport one = verify_hilbert_discrete(explicit_seq({1.0}, 1), explicit_seq({1.0}, 1), HolderPair(2.0));
  CHECK(one.lhs == 0.5);
  CHECK(one.rhs == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(verify_hilbert_discrete(explicit_seq({1.0}, 1), zero_seq(1), HolderPair(2.0)).verdict ==
        Verdict::Inadmissible);
  const SequenceFamily slow(PowerDecay{0.5, 1.0}, 1);
  CHECK(verify_hilbert_discrete(slow, g, HolderPair(2.0)).verdict == Verdict::Inadmissible);
}

TEST_CASE("offset discrete inequality examples") {
  const VerificationReport r =
      verify_lemma_offset_discrete(explicit_seq({1.0}, 0), explicit_seq({1.0}, 0), HolderPair(2.0));
  CHECK(r.lhs == 1.0);
  CHECK(r.rhs == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(r.verdict == Verdict::Holds);
  const SequenceFamily g(Geometric{0.5, 1.0}, 0);
  const VerificationReport s = verify_lemma_offset_discrete(g, g, HolderPair(2.0));
  CHECK(s.lhs == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(s.rhs == doctest::Approx(kPi * 4.0 / 3.0).epsilon(1e-12));
  CHECK(s.verdict == Verdict::Holds);
  CHECK_THROWS_AS(HolderPair(1.0), DomainError);
}

TEST_CASE("sum of discrete inequalities example") {
  const SumDiscreteInstance inst{explicit_seq({1.0}, 1), explicit_seq({1.0}, 1), explicit_seq({1.0}, 0),
                                 explicit_seq({1.0}, 0), HolderPair(2.0), 1};
  const VerificationReport r = verify_sum_discrete(inst);
  CHECK(r.lhs == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(r.rhs == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(r.verdict == Verdict::Holds);
}

TEST_CASE("multiplicity scales the second component") {
  const SequenceFamily a(Geometric{0.5, 1.0}, 1);
  const SequenceFamily c(Geometric{0.4, 2.0}, 0);
  const HolderPair pair(3.0);
  for (int k = 1; k <= 8; ++k) {
    const VerificationReport r = verify_sum_discrete({a, a, c, c, pair, k});
    check_holds_rule(r);
    CHECK(r.verdict == Verdict::Holds);
    // Direct assembly of both sides.
    const double c0 = 2.0;
    const double lhs = k * c0 * c0 + double_sum_kernel(a, a, 0, 1e-12).value +
                       k * double_sum_kernel(c.without_leading(1), c.without_leading(1), 1, 1e-12).value;
    CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-9));
  }
}

TEST_CASE("reduction: c = d = 0 reproduces the classical discrete report") {
  const HolderPair pair(1.5);
  for (const SequenceFamily& a : {SequenceFamily(Geometric{0.3, 1.0}, 1), explicit_seq({2.0, 1.0, 3.0}, 1),
                                  SequenceFamily(TruncatedPowerSeq{-0.5, 40}, 1)}) {
    const SequenceFamily b(Geometric{0.6, 2.0}, 1);
    const VerificationReport base = verify_hilbert_discrete(a, b, pair);
    for (int k : {1, 3}) {
      const VerificationReport sum = verify_sum_discrete({a, b, zero_seq(0), zero_seq(0), pair, k});
      CHECK(sum.lhs == base.lhs);
      CHECK(sum.rhs == base.rhs);
      CHECK(sum.verdict == base.verdict);
    }
  }
}

TEST_CASE("reduction: a = b = 0 with vanishing cross terms reproduces the offset report") {
  const HolderPair pair(2.0);
  const SequenceFamily c = SequenceFamily(Geometric{0.5, 1.0}, 0).without_leading(1);
  const SequenceFamily d = explicit_seq({0.0, 1.0, 4.0, 2.0}, 0);
  const VerificationReport lemma = verify_lemma_offset_discrete(c, d, pair);
  const VerificationReport sum = verify_sum_discrete({zero_seq(1), zero_seq(1), c, d, pair, 1});
  CHECK(close(sum.lhs, sum.lhs_error, lemma.lhs, lemma.lhs_error));
  CHECK(close(sum.rhs, sum.rhs_error, lemma.rhs, lemma.rhs_error));
}

TEST_CASE("reduction gap equals the cross terms") {
  // With a = b = 0 the offset sum over m, n >= 0 exceeds the combined left side by
  // c0 * sum_{n>=1} d_n/(n+1) + d0 * sum_{m>=1} c_m/(m+1).
  const HolderPair pair(2.0);
  const SequenceFamily c = explicit_seq({2.0, 1.0, 0.5}, 0);
  const SequenceFamily d = explicit_seq({3.0, 0.0, 1.0, 1.0}, 0);
  const VerificationReport lemma = verify_lemma_offset_discrete(c, d, pair);
  const VerificationReport sum = verify_sum_discrete({zero_seq(1), zero_seq(1), c, d, pair, 1});
  const double cross = 2.0 * (0.0 / 2.0 + 1.0 / 3.0 + 1.0 / 4.0) + 3.0 * (1.0 / 2.0 + 0.5 / 3.0);
  CHECK(lemma.lhs - sum.lhs == doctest::Approx(cross).epsilon(1e-13));
  CHECK(sum.rhs == lemma.rhs);
}

TEST_CASE("weighted inequality with C at n = 0, lambda = 1 matches the classical report") {
  const TestFunction e = TestFunction::monomial_exponential(0.0, 1.0);
  const HolderPair pair(2.0);
  const VerificationReport w = verify_weighted_integral(e, e, pair, KernelParams{1.0, 0.0, 0}, WeightVariant::C);
  const VerificationReport h = verify_hilbert_integral(e, e, pair);
  CHECK(close(w.lhs, w.lhs_error, h.lhs, h.lhs_error));
  CHECK(close(w.rhs, w.rhs_error, h.rhs, h.rhs_error));
  CHECK(w.verdict == h.verdict);
}

TEST_CASE("weighted inequality positivity screening") {
  const HolderPair pair(2.0);
  const TestFunction xe = TestFunction::monomial_exponential(1.0, 1.0);
  const VerificationReport r = verify_weighted_integral(xe, xe, pair, KernelParams{3.0, 0.0, 1}, WeightVariant::C);
  CHECK(r.verdict == Verdict::Inadmissible);
  const TestFunction slow = TestFunction::monomial_exponential(1.0, 1e-4);
  const VerificationReport s = verify_weighted_integral(slow, slow, pair, KernelParams{3.0, 0.0, 1}, WeightVariant::C);
  CHECK(s.verdict == Verdict::Holds);
  check_holds_rule(s);
}

TEST_CASE("weighted inequality is invariant under dilation") {
  // Both sides scale like b^(l - 2 - 2s) for f = g = x^s e^{-b x}, so the ratio is b-free.
  const HolderPair pair(3.0);
  const KernelParams k{2.5, 0.2, 0};
  double ratio = -1.0;
  for (double b : {0.01, 1.0, 50.0}) {
    const TestFunction f = TestFunction::monomial_exponential(2.0, b);
    const VerificationReport r = verify_weighted_integral(f, f, pair, k, WeightVariant::CPrime);
    REQUIRE(r.verdict == Verdict::Holds);
    if (ratio > 0.0) {
      CHECK(r.ratio == doctest::Approx(ratio).epsilon(1e-7));
    }
    ratio = r.ratio;
  }
}

TEST_CASE("the literal shifted constant fails under dilation") {
  // p = 2, n = 0, l = 1, g = 0.25: the literal form loses a factor b^(1/2) as b -> 0.
  const HolderPair pair(2.0);
  const KernelParams k{1.0, 0.25, 0};
  VerifyOptions literal;
  literal.convention = ShiftConvention::Literal;
  const TestFunction wide = TestFunction::monomial_exponential(0.0, 1e-4);
  const VerificationReport bad = verify_weighted_integral(wide, wide, pair, k, WeightVariant::CPrime, literal);
  CHECK(bad.verdict == Verdict::Violated);
  CHECK(bad.lhs == doctest::Approx(1e4).epsilon(1e-8));
  CHECK(bad.rhs == doctest::Approx(16.47 * 100.0).epsilon(1e-3));
  const VerificationReport good = verify_weighted_integral(wide, wide, pair, k, WeightVariant::CPrime);
  CHECK(good.verdict == Verdict::Holds);
}

TEST_CASE("descriptors record weights and convention") {
  const TestFunction f = TestFunction::monomial_exponential(2.0, 1.0);
  const VerificationReport r =
      verify_weighted_integral(f, f, HolderPair(2.0), KernelParams{2.0, 0.1, 0}, WeightVariant::CPrime);
  CHECK(r.instance_descriptor.find("convention=homogeneous") != std::string::npos);
  CHECK(r.instance_descriptor.find("y-weight=") != std::string::npos);
  CHECK(r.instance_descriptor.find("unsymmetrized-y-weight=") != std::string::npos);
}

TEST_CASE("sum of integral inequalities examples") {
  const HolderPair pair(2.0);
  const TestFunction e = TestFunction::monomial_exponential(0.0, 1.0);
  const VerificationReport m1 = verify_sum_integral({e, e, pair, KernelParams{1.0, 0.25, 0}, 1});
  CHECK(m1.verdict == Verdict::Holds);
  CHECK(m1.lhs == doctest::Approx(1.0).epsilon(1e-10));
  const VerificationReport m5 = verify_sum_integral({e, e, pair, KernelParams{1.0, 0.25, 0}, 5});
  CHECK(m5.verdict == Verdict::Holds);
  const VerificationReport c = verify_weighted_integral(e, e, pair, KernelParams{1.0, 0.25, 0}, WeightVariant::C);
  const VerificationReport cp =
      verify_weighted_integral(e, e, pair, KernelParams{1.0, 0.25, 0}, WeightVariant::CPrime);
  REQUIRE(c.verdict == Verdict::Holds);
  REQUIRE(cp.verdict == Verdict::Holds);
  CHECK(m5.rhs >= std::min(c.rhs, cp.rhs) - m5.rhs_error - c.rhs_error - cp.rhs_error);
  CHECK(m5.rhs <= std::max(c.rhs, cp.rhs) + m5.rhs_error + c.rhs_error + cp.rhs_error);
}

TEST_CASE("reduction: m = 1, gamma = 0 matches the C-weighted report") {
  const HolderPair pair(1.5);
  const TestFunction f = TestFunction::monomial_exponential(3.0, 0.5);
  const TestFunction g = TestFunction::monomial_exponential(2.0, 2.0);
  const KernelParams k{2.5, 0.0, 0};
  const VerificationReport s = verify_sum_integral({f, g, pair, k, 1});
  const VerificationReport c = verify_weighted_integral(f, g, pair, k, WeightVariant::C);
  CHECK(close(s.rhs, s.rhs_error, c.rhs, c.rhs_error));
  CHECK(close(s.lhs, s.lhs_error, c.lhs, c.lhs_error));
}

TEST_CASE("combined bound dominates the mixture of the two pure bounds") {
  const TestFunction f = TestFunction::monomial_exponential(3.0, 1e-4);
  const TestFunction g = TestFunction::monomial_exponential(4.0, 1e-4);
  for (double p : {1.5, 3.0}) {
    const HolderPair pair(p);
    const KernelParams k{4.0, 0.3, 1};
    const VerificationReport c = verify_weighted_integral(f, g, pair, k, WeightVariant::C);
    const VerificationReport cp = verify_weighted_integral(f, g, pair, k, WeightVariant::CPrime);
    REQUIRE(c.verdict == Verdict::Holds);
    REQUIRE(cp.verdict == Verdict::Holds);
    for (int m : {1, 2, 5}) {
      const VerificationReport s = verify_sum_integral({f, g, pair, k, m});
      REQUIRE(s.verdict == Verdict::Holds);
      CHECK((m + 1) * (s.rhs + s.rhs_error) >= c.rhs - c.rhs_error + m * (cp.rhs - cp.rhs_error));
    }
  }
}

TEST_CASE("inadmissible integral instances") {
  const HolderPair pair(2.0);
  const TestFunction e = TestFunction::monomial_exponential(0.0, 1.0);
  // gamma outside the interval.
  CHECK(verify_sum_integral({e, e, pair, KernelParams{1.0, 0.6, 0}, 1}).verdict == Verdict::Inadmissible);
  CHECK(verify_sum_integral({e, e, pair, KernelParams{1.0, 0.0, 0}, 0}).verdict == Verdict::Inadmissible);
  const VerificationReport r =
      verify_weighted_integral(e, e, pair, KernelParams{3.0, 0.0, 0}, WeightVariant::C);
  CHECK(r.verdict == Verdict::Inadmissible);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("superadditivity examples") {
  const std::vector<double> ones = {1.0, 1.0};
  const std::vector<double> halves = {0.5, 0.5};
  const VerificationReport eq = check_superadditivity(ones, ones, halves);
  CHECK(eq.lhs == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eq.rhs == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(eq.ratio - 1.0) <= 1e-12);
  const VerificationReport strict = check_superadditivity(std::vector<double>{4.0, 1.0},
                                                          std::vector<double>{1.0, 4.0}, halves);
  CHECK(strict.lhs == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(strict.rhs == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(strict.verdict == Verdict::Holds);
  CHECK_THROWS_AS(check_superadditivity(ones, ones, std::vector<double>{0.7, 0.4}), DomainError);
  CHECK_THROWS_AS(check_superadditivity(ones, std::vector<double>{1.0, 0.0}, halves), DomainError);
  CHECK_THROWS_AS(check_superadditivity(std::vector<double>{-1.0, 1.0}, ones, halves), DomainError);
  CHECK_THROWS_AS(check_superadditivity(ones, ones, std::vector<double>{1.0, 0.0}), DomainError);
}

TEST_CASE("superadditivity property on random instances") {
  std::uint64_t state = 88172645463325252ull;
  auto next = [&] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<double> a(n), b(n), alpha(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      a[i] = 1e-3 + 100.0 * next();
      b[i] = 1e-3 + 100.0 * next();
      alpha[i] = 0.05 + next();
      total += alpha[i];
    }
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      alpha[i] /= total;
      acc += alpha[i];
    }
    alpha[n - 1] = 1.0 - acc;
    check_holds_rule(check_superadditivity(a, b, alpha));
    // Proportional b gives equality.
    std::vector<double> scaled(n);
    for (int i = 0; i < n; ++i) scaled[i] = 2.5 * a[i];
    CHECK(std::abs(check_superadditivity(a, scaled, alpha).ratio - 1.0) <= 1e-12);
  }
}
