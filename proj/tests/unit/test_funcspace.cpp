#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "hforge/errors.hpp"
#include "hforge/funcspace.hpp"

using namespace hforge;

namespace {

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

// 5-point central difference, Richardson-extrapolated over h and h/2.
double fd_derivative(const TestFunction& f, int order, double x, double h) {
  auto d1 = [&](double step) {
    return (-f.derivative(order, x + 2 * step) + 8 * f.derivative(order, x + step) -
            8 * f.derivative(order, x - step) + f.derivative(order, x - 2 * step)) /
           (12 * step);
  };
  return (16 * d1(h / 2) - d1(h)) / 15;
}

}  // namespace

TEST_CASE("derivative examples") {
  const TestFunction xe = TestFunction::monomial_exponential(1.0, 1.0);
  CHECK(eval_derivative(xe, 1, 0.0) == 1.0);
  const TestFunction e = TestFunction::monomial_exponential(0.0, 1.0);
  CHECK(eval_derivative(e, 0, 0.0) == 1.0);
  const TestFunction x2e = TestFunction::monomial_exponential(2.0, 1.0);
  CHECK(eval_derivative(x2e, 2, 1.0) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("derivatives agree with finite differences") {
  for (double s : {0.0, 0.5, 1.0, 2.0, 3.5, 5.0}) {
    for (double b : {0.5, 1.0, 2.0}) {
      const TestFunction f = TestFunction::monomial_exponential(s, b, 1.5);
      for (int k = 0; k < 4; ++k) {
        for (double x = 0.1; x <= 10.0; x *= 1.7) {
          const double want = fd_derivative(f, k, x, 1e-4 * std::min(1.0, x));
          CHECK(std::abs(eval_derivative(f, k + 1, x) - want) <= 1e-6 * std::max(1.0, std::abs(want)));
        }
      }
    }
  }
}

TEST_CASE("derivatives of order below s vanish exactly at the origin") {
  for (int n = 1; n <= 4; ++n) {
    const TestFunction f = TestFunction::monomial_exponential(n + 0.5, 1.0);
    for (int k = 0; k < n; ++k) {
      CHECK(eval_derivative(f, k, 0.0) == 0.0);
    }
    const TestFunction g = TestFunction::monomial_exponential(n, 2.0);
    for (int k = 0; k < n; ++k) {
      CHECK(eval_derivative(g, k, 0.0) == 0.0);
    }
    CHECK(eval_derivative(g, n, 0.0) > 0.0);
  }
}

TEST_CASE("derivative domain") {
  const TestFunction tp = TestFunction::truncated_power(-0.5, 1.0, 100.0);
  CHECK_THROWS_AS(eval_derivative(tp, 1, 2.0), DomainError);
  CHECK(eval_derivative(tp, 0, 4.0) == doctest::Approx(0.5));
  CHECK(eval_derivative(tp, 0, 0.5) == 0.0);
  CHECK(eval_derivative(tp, 0, 200.0) == 0.0);
  const TestFunction e = TestFunction::monomial_exponential(0.0, 1.0);
  CHECK_THROWS_AS(eval_derivative(e, -1, 1.0), DomainError);
  CHECK_THROWS_AS(eval_derivative(e, 0, -1.0), DomainError);
  CHECK(eval_derivative(e, 0, std::numeric_limits<double>::infinity()) == 0.0);
  // Far out, x^s would overflow on its own.
  CHECK(eval_derivative(TestFunction::monomial_exponential(200.0, 1.0), 0, 1e4) == 0.0);
}

TEST_CASE("family parameter validation") {
  CHECK_THROWS_AS(TestFunction::monomial_exponential(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(TestFunction::monomial_exponential(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(TestFunction::truncated_power(1.0, 0.0, 2.0), DomainError);
  CHECK_THROWS_AS(TestFunction::truncated_power(1.0, 3.0, 2.0), DomainError);
  CHECK_THROWS_AS(SequenceFamily(Geometric{1.0, 1.0}, 1), DomainError);
  CHECK_THROWS_AS(SequenceFamily(Geometric{0.5, 1.0}, 2), DomainError);
  CHECK_THROWS_AS(SequenceFamily(Explicit{{1.0, -1.0}}, 1), DomainError);
  CHECK_THROWS_AS(SequenceFamily(TruncatedPowerSeq{-0.5, 0}, 1), DomainError);
}

TEST_CASE("admissibility examples") {
  const HolderPair two(2.0);
  // f' = (1 - x) e^{-x} turns negative at x = 1.
  const TestFunction xe = TestFunction::monomial_exponential(1.0, 1.0);
  CHECK(mentions(check_admissible(xe, two, KernelParams{3.0, 0.0, 1}), "f^(1) not positive"));
  // With a slow decay the sign change lies beyond the sample grid.
  const TestFunction slow = TestFunction::monomial_exponential(1.0, 1e-4);
  CHECK(check_admissible(slow, two, KernelParams{3.0, 0.0, 1}).empty());
  CHECK(check_admissible(TestFunction::monomial_exponential(2.0, 1e-4), two, KernelParams{5.0, 0.0, 2}).empty());

  const TestFunction e = TestFunction::monomial_exponential(0.0, 1.0);
  CHECK(mentions(check_admissible(e, two, KernelParams{3.0, 0.0, 1}), "f(0) ≠ 0"));
  CHECK(mentions(check_admissible(e, HolderPair(3.0), KernelParams{5.0, 0.1, 1}), "f(0) ≠ 0"));

  const TestFunction tp = TestFunction::truncated_power(-0.5, 1.0, 100.0);
  CHECK(mentions(check_admissible(tp, two, KernelParams{3.0, 0.0, 1}), "family supports n=0 only"));

  const TestFunction x2e = TestFunction::monomial_exponential(2.0, 1.0);
  CHECK(mentions(check_admissible(x2e, two, KernelParams{5.0, 0.0, 2}), "not positive"));
}

TEST_CASE("admissibility of kernel parameters") {
  const HolderPair two(2.0);
  const TestFunction f = TestFunction::monomial_exponential(3.0, 1e-4);
  CHECK(mentions(check_admissible(f, two, KernelParams{2.0, 0.0, 1}), "λ > 2n"));
  CHECK(mentions(check_admissible(f, two, KernelParams{3.0, 0.5, 1}), "outside"));
  CHECK(mentions(check_admissible(f, two, KernelParams{3.0, 0.5 - 1e-10, 1}), "outside"));
  CHECK(check_admissible(f, two, KernelParams{3.0, 0.49, 1}).empty());
  CHECK(mentions(validate_kernel_params(two, KernelParams{-1.0, 0.0, 0}), "λ must be positive"));
  // The C-only check ignores the shift.
  CHECK(check_admissible(f, two, KernelParams{3.0, 0.9, 1}, Side::First, WeightSet::C).empty());
}

TEST_CASE("positivity survives underflow of the exponential") {
  // e^{-1000 b} underflows for b = 1 but f stays positive on the whole grid.
  const TestFunction f = TestFunction::monomial_exponential(2.0, 1.0);
  CHECK(check_admissible(f, HolderPair(2.0), KernelParams{1.0, 0.0, 0}).empty());
}

TEST_CASE("weighted integral finiteness at the origin") {
  const HolderPair two(2.0);
  // Weight 2*1 - 5 - 1 = -4 with f ~ x^0: exponent -4.
  const TestFunction e = TestFunction::monomial_exponential(0.0, 1.0);
  CHECK(mentions(check_admissible(e, two, KernelParams{5.0, 0.0, 0}), "diverges at 0"));
  const TestFunction x2 = TestFunction::monomial_exponential(2.0, 1.0);
  CHECK(check_admissible(x2, two, KernelParams{5.0, 0.0, 0}).empty());
  CHECK(mentions(check_admissible(TestFunction::monomial_exponential(0.0, 1.0, 0.0), two, KernelParams{1.0, 0.0, 0}),
                 "zero function"));
}

TEST_CASE("weight exponents") {
  const HolderPair pair(3.0);
  const KernelParams k{4.0, 0.25, 1};
  const WeightExponents x = weight_exponents(pair, k, Side::First);
  CHECK(x.c_weight == doctest::Approx(3.0 * 2 - 4.0 - 1.0));
  CHECK(x.c_prime_weight == doctest::Approx(3.0 * 2 - 0.75 - 4.0 - 1.0));
  const WeightExponents y = weight_exponents(pair, k, Side::Second);
  CHECK(y.c_weight == doctest::Approx(1.5 * 2 - 4.0 - 1.0));
  CHECK(y.c_prime_weight == doctest::Approx(1.5 * 2 + 0.375 - 4.0 - 1.0));
  const WeightExponents lit = weight_exponents(pair, k, Side::Second, ShiftConvention::Literal);
  CHECK(lit.c_prime_weight == doctest::Approx(1.5 * 2 - 0.375 - 4.0 - 1.0));
}

TEST_CASE("sequence terms and indexing") {
  const SequenceFamily pd1(PowerDecay{1.0, 2.0}, 1);
  CHECK(pd1.term(1) == 2.0);
  CHECK(pd1.term(4) == 0.5);
  CHECK(pd1.term(0) == 0.0);
  const SequenceFamily pd0(PowerDecay{1.0, 2.0}, 0);
  CHECK(pd0.term(0) == 2.0);
  CHECK(pd0.term(3) == 0.5);
  const SequenceFamily geo(Geometric{0.5, 3.0}, 1);
  CHECK(geo.term(2) == 0.75);
  const SequenceFamily ex(Explicit{{1.0, 2.0, 3.0}}, 0);
  CHECK(ex.term(2) == 3.0);
  CHECK(ex.term(3) == 0.0);
  CHECK(ex.finite_end() == 3);
  CHECK(geo.finite_end() == -1);
  const SequenceFamily tp(TruncatedPowerSeq{-0.5, 4}, 1);
  CHECK(tp.term(4) == 0.5);
  CHECK(tp.term(5) == 0.0);
  CHECK(tp.finite_end() == 5);
  const SequenceFamily dropped = ex.without_leading(1);
  CHECK(dropped.term(0) == 0.0);
  CHECK(dropped.term(1) == 2.0);
  CHECK(dropped.first_index() == 1);
  CHECK(dropped.describe() != ex.describe());
  CHECK(SequenceFamily(Explicit{{4.0}}, 0).without_leading(1).is_zero());
  CHECK(SequenceFamily(Explicit{{0.0, 0.0}}, 1).is_zero());
}

TEST_CASE("lp norm examples") {
  const SumWithBound g = lp_norm_power(SequenceFamily(Geometric{0.5, 1.0}, 1), 2.0, 1e-12);
  CHECK(std::abs(g.value - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(g.value - 1.0 / 3.0) <= g.error_bound + 1e-16);
  const SumWithBound e = lp_norm_power(SequenceFamily(Explicit{{1.0}}, 1), 3.0, 1e-12);
  CHECK(e.value == 1.0);
  CHECK(e.error_bound <= 1e-15);
  const double basel = std::numbers::pi * std::numbers::pi / 6.0;
  const SumWithBound b = lp_norm_power(SequenceFamily(PowerDecay{1.0, 1.0}, 1), 2.0, 1e-10);
  CHECK(std::abs(b.value - basel) <= b.error_bound);
  CHECK(b.error_bound <= 1e-10 * basel);
}

TEST_CASE("lp norm oracles with honest bounds") {
  // zeta values: sum m^-s.
  struct Case {
    double alpha, p, want;
  };
  for (const Case& c : {Case{1.5, 2.0, 1.2020569031595943}, Case{1.0, 4.0, 1.0823232337111382},
                        Case{0.5, 3.0, 2.6123753486854883}, Case{2.0, 1.5, 1.2020569031595943}}) {
    const SumWithBound r = lp_norm_power(SequenceFamily(PowerDecay{c.alpha, 1.0}, 1), c.p, 1e-11);
    CHECK(std::abs(r.value - c.want) <= r.error_bound);
    CHECK(r.error_bound <= 1e-11 * c.want);
  }
}

TEST_CASE("lp norm rejects non-summable and over-cap requests") {
  CHECK_THROWS_AS(lp_norm_power(SequenceFamily(PowerDecay{0.5, 1.0}, 1), 2.0, 1e-8), DomainError);
  Caps tiny;
  tiny.max_terms = 10;
  CHECK_THROWS_AS(lp_norm_power(SequenceFamily(PowerDecay{0.6, 1.0}, 1), 2.0, 1e-14, tiny), ToleranceUnreachable);
}

TEST_CASE("lp norm is nonincreasing in p for terms bounded by 1") {
  const SequenceFamily g(Geometric{0.5, 1.0}, 1);
  double prev = std::numeric_limits<double>::infinity();
  for (double p : {2.0, 3.0, 4.0}) {
    const double v = lp_norm_power(g, p, 1e-13).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("lp tail") {
  const SequenceFamily g(Geometric{0.5, 1.0}, 1);
  const SumWithBound t = lp_tail_power(g, 1.0, 3, 1e-13);
  CHECK(std::abs(t.value - 0.25) <= 1e-13);
  const SequenceFamily pd(PowerDecay{1.0, 1.0}, 1);
  const double head = 1.0 + 0.25 + 1.0 / 9.0;
  const SumWithBound tail = lp_tail_power(pd, 2.0, 4, 1e-11);
  const double basel = std::numbers::pi * std::numbers::pi / 6.0;
  CHECK(std::abs(tail.value - (basel - head)) <= tail.error_bound + 1e-15);
}

TEST_CASE("without_leading is idempotent") {
  const SequenceFamily g(Geometric{0.5, 1.0}, 0);
  const SequenceFamily once = g.without_leading(1);
  const SequenceFamily twice = once.without_leading(1);
  CHECK(twice.term(0) == 0.0);
  CHECK(twice.term(1) == 0.5);
  CHECK(twice.describe() == once.describe());
  CHECK(once.without_leading(3).term(2) == 0.0);
  CHECK(once.without_leading(3).term(3) == 0.125);
}
