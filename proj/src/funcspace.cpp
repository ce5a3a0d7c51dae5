#include "hforge/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hforge/errors.hpp"
#include "hforge/numfmt.hpp"
#include "hforge/summation.hpp"

namespace hforge {

namespace {

constexpr int kMonomialMaxOrder = 12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// s (s-1) ... (s-k+1); exactly zero for integer s in [0, k).
double falling_factorial(double s, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) {
    out *= (s - i);
  }
  return out;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

double monomial_derivative(const MonomialExponential& f, int order, double x) {
  if (f.scale == 0.0) {
    return 0.0;
  }
  if (x == 0.0) {
    // Only the most singular surviving term matters at the origin.
    for (int k = order; k >= 0; --k) {
      const double ff = falling_factorial(f.s, k);
      if (ff == 0.0) {
        continue;
      }
      const double coeff = f.scale * binomial(order, k) * ff * std::pow(-f.b, order - k);
      const double e = f.s - k;
      if (e < 0.0) {
        return std::copysign(std::numeric_limits<double>::infinity(), coeff);
      }
      if (e > 0.0) {
        return 0.0;
      }
      return coeff;
    }
    return 0.0;
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  // Each term is assembled in log space so x^(s-k) cannot overflow ahead of exp(-b x).
  const double log_x = std::log(x);
  double acc = 0.0;
  for (int k = 0; k <= order; ++k) {
    const double ff = falling_factorial(f.s, k);
    if (ff == 0.0) {
      continue;
    }
    const double coeff = binomial(order, k) * ff * std::pow(-f.b, order - k);
    acc += std::copysign(std::exp(std::log(std::abs(coeff)) + (f.s - k) * log_x - f.b * x), coeff);
  }
  return f.scale * acc;
}

// Sign of f^(order)(x) for x > 0. The factor exp(-b x) is dropped and the
// terms are rescaled by the largest one, so underflow cannot fake a zero.
int monomial_derivative_sign(const MonomialExponential& f, int order, double x) {
  if (f.scale == 0.0) {
    return 0;
  }
  const double log_x = std::log(x);
  std::vector<std::pair<double, double>> terms;  // (log magnitude, coefficient sign)
  double top = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= order; ++k) {
    const double ff = falling_factorial(f.s, k);
    if (ff == 0.0) {
      continue;
    }
    const double coeff = binomial(order, k) * ff * std::pow(-f.b, order - k);
    const double lm = std::log(std::abs(coeff)) + (f.s - k) * log_x;
    terms.emplace_back(lm, coeff);
    top = std::max(top, lm);
  }
  double acc = 0.0;
  for (const auto& [lm, coeff] : terms) {
    acc += std::copysign(std::exp(lm - top), coeff);
  }
  return (acc > 0.0) - (acc < 0.0);
}

std::string describe_family(const TestFunction::Family& family) {
  return std::visit(
      [](const auto& fam) -> std::string {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, MonomialExponential>) {
          return "monomial_exponential(s=" + format_shortest(fam.s) + ",b=" + format_shortest(fam.b) +
                 ",scale=" + format_shortest(fam.scale) + ")";
        } else {
          return "truncated_power(exponent=" + format_shortest(fam.exponent) +
                 ",lower=" + format_shortest(fam.lower) + ",upper=" + format_shortest(fam.upper) + ")";
        }
      },
      family);
}

}  // namespace

// ---------------------------------------------------------------------------

TestFunction::TestFunction(Family family, std::string description)
    : family_(std::move(family)), description_(std::move(description)) {
  std::visit(
      [](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, MonomialExponential>) {
          if (!(fam.s >= 0.0) || !std::isfinite(fam.s)) {
            throw DomainError("monomial_exponential: s must be >= 0");
          }
          if (!(fam.b > 0.0) || !std::isfinite(fam.b)) {
            throw DomainError("monomial_exponential: b must be positive");
          }
          if (!(fam.scale >= 0.0) || !std::isfinite(fam.scale)) {
            throw DomainError("monomial_exponential: scale must be >= 0");
          }
        } else {
          if (!std::isfinite(fam.exponent)) {
            throw DomainError("truncated_power: exponent must be finite");
          }
          if (!(fam.lower > 0.0) || !(fam.upper > fam.lower) || !std::isfinite(fam.upper)) {
            throw DomainError("truncated_power: need 0 < lower < upper < inf");
          }
        }
      },
      family_);
  if (description_.empty()) {
    description_ = describe_family(family_);
  }
}

TestFunction TestFunction::monomial_exponential(double s, double b, double scale) {
  return TestFunction(MonomialExponential{s, b, scale});
}

TestFunction TestFunction::truncated_power(double exponent, double lower, double upper) {
  return TestFunction(TruncatedPowerFn{exponent, lower, upper});
}

double TestFunction::derivative(int order, double x) const { return eval_derivative(*this, order, x); }

Support TestFunction::support() const noexcept {
  if (const auto* tp = std::get_if<TruncatedPowerFn>(&family_)) {
    return {tp->lower, tp->upper};
  }
  return {};
}

bool TestFunction::is_zero() const noexcept {
  if (const auto* me = std::get_if<MonomialExponential>(&family_)) {
    return me->scale == 0.0;
  }
  return false;
}

int TestFunction::max_order() const noexcept {
  return std::holds_alternative<MonomialExponential>(family_) ? kMonomialMaxOrder : 0;
}

double TestFunction::leading_exponent_at_zero(int order) const {
  if (const auto* me = std::get_if<MonomialExponential>(&family_)) {
    for (int k = order; k >= 0; --k) {
      if (falling_factorial(me->s, k) != 0.0) {
        return me->s - k;
      }
    }
    return me->s;
  }
  return std::numeric_limits<double>::infinity();
}

double eval_derivative(const TestFunction& f, int order, double x) {
  if (order < 0 || order > f.max_order()) {
    throw DomainError("eval_derivative: order " + std::to_string(order) + " unsupported for " +
                      f.description());
  }
  if (!(x >= 0.0)) {
    throw DomainError("eval_derivative: x must be >= 0");
  }
  if (const auto* me = std::get_if<MonomialExponential>(&f.family())) {
    return monomial_derivative(*me, order, x);
  }
  const auto& tp = std::get<TruncatedPowerFn>(f.family());
  if (x < tp.lower || x > tp.upper) {
    return 0.0;
  }
  return std::pow(x, tp.exponent);
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate_kernel_params(const HolderPair& pair, const KernelParams& params) {
  std::vector<std::string> out;
  constexpr double kMargin = 1e-9;
  if (params.n < 0) {
    out.emplace_back("n must be a nonnegative integer");
  }
  if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) {
    out.emplace_back("λ must be positive");
  }
  if (!(params.lambda > 2.0 * params.n)) {
    out.emplace_back("λ > 2n violated (λ = " + format_shortest(params.lambda) +
                     ", n = " + std::to_string(params.n) + ")");
  }
  const double lo = params.n - params.lambda / pair.p();
  const double hi = params.lambda / pair.q() - params.n;
  if (!(params.gamma_shift > lo + kMargin && params.gamma_shift < hi - kMargin)) {
    out.emplace_back("γ = " + format_shortest(params.gamma_shift) + " outside (n − λ/p, λ/q − n) = (" +
                     format_shortest(lo) + ", " + format_shortest(hi) + ")");
  }
  return out;
}

WeightExponents weight_exponents(const HolderPair& pair, const KernelParams& params, Side side,
                                 ShiftConvention convention) {
  const double r = side == Side::First ? pair.p() : pair.q();
  const double base = r * (params.n + 1) - params.lambda - 1.0;
  double shift = -r * params.gamma_shift;
  if (side == Side::Second && convention == ShiftConvention::Homogeneous) {
    shift = r * params.gamma_shift;
  }
  return {base, base + shift};
}

std::vector<std::string> check_admissible(const TestFunction& f, const HolderPair& pair,
                                          const KernelParams& params, Side side, WeightSet weights,
                                          ShiftConvention convention) {
  std::vector<std::string> out;
  if (weights == WeightSet::C) {
    // C alone needs only positive Gamma arguments; the shift plays no role.
    if (params.n < 0) {
      out.emplace_back("n must be a nonnegative integer");
    }
    if (!(params.lambda / pair.p() > params.n) || !(params.lambda / pair.q() > params.n)) {
      out.emplace_back("λ/p > n and λ/q > n violated (λ = " + format_shortest(params.lambda) +
                       ", n = " + std::to_string(params.n) + ")");
    }
  } else {
    out = validate_kernel_params(pair, params);
  }
  if (f.is_zero()) {
    out.emplace_back("zero function (norms must be positive)");
  }
  if (params.n < 0) {
    return out;
  }
  if (params.n > f.max_order()) {
    out.emplace_back(f.max_order() == 0 ? "family supports n=0 only"
                                        : "derivative order exceeds closed-form range");
    return out;
  }

  // (i) vanishing derivatives of order < n at the origin.
  for (int k = 0; k < params.n; ++k) {
    if (eval_derivative(f, k, 0.0) != 0.0) {
      out.emplace_back(k == 0 ? std::string("f(0) ≠ 0") : "f^(" + std::to_string(k) + ")(0) ≠ 0");
    }
  }

  // (ii) sampled positivity of every order 0..n on a log grid.
  const bool strict = std::holds_alternative<MonomialExponential>(f.family());
  const double log_lo = std::log(kPositivityGridLow);
  const double log_hi = std::log(kPositivityGridHigh);
  for (int k = 0; k <= params.n; ++k) {
    for (int i = 0; i < kPositivityGridPoints; ++i) {
      const double x = std::exp(log_lo + (log_hi - log_lo) * i / (kPositivityGridPoints - 1));
      const bool ok = strict ? monomial_derivative_sign(std::get<MonomialExponential>(f.family()), k, x) > 0
                             : eval_derivative(f, k, x) >= 0.0;
      if (!ok) {
        out.emplace_back((k == 0 ? std::string("f") : "f^(" + std::to_string(k) + ")") +
                         " not positive at x = " + format_shortest(x));
        break;
      }
    }
  }

  // (iii) weighted-norm finiteness from the exponent at the origin.
  if (f.support().lower == 0.0) {
    const double r = side == Side::First ? pair.p() : pair.q();
    const WeightExponents w = weight_exponents(pair, params, side, convention);
    const double lead = r * f.leading_exponent_at_zero(params.n);
    auto check = [&](double weight, const char* which) {
      const double e = weight + lead;
      if (!(e > -1.0)) {
        out.emplace_back(std::string(which) + "-weighted integral diverges at 0 (exponent " +
                         format_shortest(e) + " ≤ −1)");
      }
    };
    if (weights != WeightSet::CPrime) {
      check(w.c_weight, "C");
    }
    if (weights != WeightSet::C) {
      check(w.c_prime_weight, "C′");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

SequenceFamily::SequenceFamily(Family family, int start_index) : family_(std::move(family)), start_(start_index) {
  if (start_ != 0 && start_ != 1) {
    throw DomainError("sequence start index must be 0 or 1");
  }
  std::visit(
      [](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, PowerDecay>) {
          if (!(fam.alpha > 0.0) || !std::isfinite(fam.alpha)) {
            throw DomainError("power_decay: alpha must be positive");
          }
          if (!(fam.scale >= 0.0) || !std::isfinite(fam.scale)) {
            throw DomainError("power_decay: scale must be >= 0");
          }
        } else if constexpr (std::is_same_v<T, Geometric>) {
          if (!(fam.r > 0.0 && fam.r < 1.0)) {
            throw DomainError("geometric: r must lie in (0, 1)");
          }
          if (!(fam.scale >= 0.0) || !std::isfinite(fam.scale)) {
            throw DomainError("geometric: scale must be >= 0");
          }
        } else if constexpr (std::is_same_v<T, Explicit>) {
          for (double v : fam.values) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
              throw DomainError("explicit: terms must be finite and nonnegative");
            }
          }
        } else {
          if (fam.cutoff < 1) {
            throw DomainError("truncated_power: cutoff must be >= 1");
          }
          if (!std::isfinite(fam.exponent)) {
            throw DomainError("truncated_power: exponent must be finite");
          }
        }
      },
      family_);
}

SequenceFamily SequenceFamily::without_leading(std::int64_t count) const {
  SequenceFamily out = *this;
  out.dropped_ = std::max(dropped_, count);
  return out;
}

double SequenceFamily::term(std::int64_t m) const {
  if (m < start_ + dropped_) {
    return 0.0;
  }
  const std::int64_t j = m - start_ + 1;
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, PowerDecay>) {
          return fam.scale * std::pow(static_cast<double>(j), -fam.alpha);
        } else if constexpr (std::is_same_v<T, Geometric>) {
          return fam.scale * std::pow(fam.r, static_cast<double>(m));
        } else if constexpr (std::is_same_v<T, Explicit>) {
          const auto idx = static_cast<std::size_t>(j - 1);
          return idx < fam.values.size() ? fam.values[idx] : 0.0;
        } else {
          return j <= fam.cutoff ? std::pow(static_cast<double>(j), fam.exponent) : 0.0;
        }
      },
      family_);
}

std::int64_t SequenceFamily::finite_end() const noexcept {
  if (is_zero()) {
    return start_;
  }
  if (const auto* e = std::get_if<Explicit>(&family_)) {
    return start_ + static_cast<std::int64_t>(e->values.size());
  }
  if (const auto* tp = std::get_if<TruncatedPowerSeq>(&family_)) {
    return start_ + tp->cutoff;
  }
  return -1;
}

bool SequenceFamily::is_zero() const noexcept {
  const std::int64_t dropped = dropped_;
  return std::visit(
      [dropped](const auto& fam) -> bool {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Explicit>) {
          const auto skip = static_cast<std::size_t>(std::min<std::int64_t>(dropped, fam.values.size()));
          return std::all_of(fam.values.begin() + skip, fam.values.end(), [](double v) { return v == 0.0; });
        } else if constexpr (std::is_same_v<T, TruncatedPowerSeq>) {
          return fam.cutoff <= dropped;
        } else {
          return fam.scale == 0.0;
        }
      },
      family_);
}

std::vector<double> SequenceFamily::head(std::int64_t count) const {
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = term(start_ + static_cast<std::int64_t>(i));
  }
  return out;
}

std::string SequenceFamily::describe() const {
  const std::string start =
      ",start=" + std::to_string(start_) + (dropped_ > 0 ? ",drop=" + std::to_string(dropped_) : "") + ")";
  return std::visit(
      [&](const auto& fam) -> std::string {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, PowerDecay>) {
          return "power_decay(alpha=" + format_shortest(fam.alpha) + ",scale=" + format_shortest(fam.scale) + start;
        } else if constexpr (std::is_same_v<T, Geometric>) {
          return "geometric(r=" + format_shortest(fam.r) + ",scale=" + format_shortest(fam.scale) + start;
        } else if constexpr (std::is_same_v<T, Explicit>) {
          std::string s = "explicit([";
          for (std::size_t i = 0; i < fam.values.size(); ++i) {
            s += (i ? "," : "") + format_shortest(fam.values[i]);
          }
          return s + "]" + start;
        } else {
          return "truncated_power(exponent=" + format_shortest(fam.exponent) +
                 ",cutoff=" + std::to_string(fam.cutoff) + start;
        }
      },
      family_);
}

// ---------------------------------------------------------------------------

Caps default_caps() {
  Caps caps;
  if (const char* env = std::getenv("HILBERT_FORGE_CAP")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v >= 1.0 && std::isfinite(v)) {
      caps.max_terms = static_cast<std::int64_t>(v);
      caps.max_evaluations = static_cast<std::int64_t>(v);
      caps.max_pairs = static_cast<std::int64_t>(std::min(v * 160.0, 9.0e18));
    }
  }
  return caps;
}

namespace {

bool within(double err, double value, double tol) { return err <= tol * std::max(1.0, std::abs(value)); }

}  // namespace

SumWithBound lp_tail_power(const SequenceFamily& seq, double p, std::int64_t from, double tol, const Caps& caps) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("lp_norm_power: p must be positive");
  }
  if (!(tol > 0.0)) {
    throw DomainError("lp_norm_power: tol must be positive");
  }
  from = std::max<std::int64_t>(from, seq.first_index());
  if (seq.is_zero()) {
    return {0.0, 0.0};
  }

  if (const std::int64_t end = seq.finite_end(); end >= 0) {
    if (end - from > caps.max_terms) {
      throw ToleranceUnreachable("lp_norm_power: finite support exceeds the term cap");
    }
    NeumaierSum acc;
    for (std::int64_t m = from; m < end; ++m) {
      acc.add(std::pow(seq.term(m), p));
    }
    const double value = acc.result();
    return {value, 4.0 * kEps * value};
  }

  if (const auto* geo = std::get_if<Geometric>(&seq.family())) {
    const double rp = std::pow(geo->r, p);
    const double value = std::pow(geo->scale, p) * std::pow(geo->r, p * static_cast<double>(from)) / (1.0 - rp);
    const double err = 8.0 * kEps * value * (1.0 + 1.0 / (1.0 - rp));
    if (!within(err, value, tol)) {
      throw ToleranceUnreachable("lp_norm_power: tolerance below the rounding floor");
    }
    return {value, err};
  }

  const auto& pd = std::get<PowerDecay>(seq.family());
  const double sigma = pd.alpha * p;
  if (!(sigma > 1.0)) {
    throw DomainError("lp_norm_power: power_decay with alpha*p <= 1 is not p-summable");
  }
  const double coef = std::pow(pd.scale, p);
  auto tail_integral = [&](double a) { return std::pow(a, 1.0 - sigma) / (sigma - 1.0); };
  auto g = [&](double j) { return std::pow(j, -sigma); };

  // Positions j = m - start + 1; sum j0..J directly, bracket the rest by convexity:
  //   int_{J+1}^inf g + g(J+1)/2  <=  sum_{j>J} g(j)  <=  int_{J+1/2}^inf g.
  const auto j0 = static_cast<double>(from - seq.start_index() + 1);
  NeumaierSum partial;
  double last = j0 - 1.0;
  double width = 64.0;
  for (;;) {
    const double J = j0 - 1.0 + width;
    for (double j = last + 1.0; j <= J; j += 1.0) {
      partial.add(g(j));
    }
    last = J;
    const double lower = tail_integral(J + 1.0) + 0.5 * g(J + 1.0);
    const double upper = tail_integral(J + 0.5);
    const double value = coef * (partial.result() + 0.5 * (lower + upper));
    const double err = coef * (0.5 * (upper - lower) + 4.0 * kEps * (partial.result() + upper));
    if (within(err, value, tol)) {
      return {value, err};
    }
    if (width * 2.0 > static_cast<double>(caps.max_terms)) {
      throw ToleranceUnreachable("lp_norm_power: tolerance " + format_shortest(tol) +
                                 " needs more than " + std::to_string(caps.max_terms) + " terms");
    }
    width *= 2.0;
  }
}

SumWithBound lp_norm_power(const SequenceFamily& seq, double p, double tol, const Caps& caps) {
  return lp_tail_power(seq, p, seq.start_index(), tol, caps);
}

}  // namespace hforge
