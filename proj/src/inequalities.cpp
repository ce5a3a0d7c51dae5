#include "hforge/inequalities.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "hforge/errors.hpp"
#include "hforge/numfmt.hpp"
#include "hforge/quadrature.hpp"
#include "hforge/series.hpp"

namespace hforge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Relative accuracy of constants assembled from log_gamma.
constexpr double kConstantRelError = 1e-13;

QuadOptions quad_options(const VerifyOptions& opts) {
  QuadOptions q;
  q.abs_tol = opts.tol;
  q.rel_tol = opts.tol;
  q.max_evaluations = opts.caps.max_evaluations;
  return q;
}

SeriesOptions series_options(const VerifyOptions& opts, const HolderPair& pair) {
  SeriesOptions s;
  s.caps = opts.caps;
  s.strict = false;
  s.hint_p = pair.p();
  s.max_head = opts.max_head;
  return s;
}

/// R = K A^(1/p) B^(1/q) with first-order propagation of the errors of A and B.
std::pair<double, double> norm_product(double k, double k_rel_err, double a, double a_err, double b, double b_err,
                                       const HolderPair& pair) {
  const double r = k * std::pow(a, 1.0 / pair.p()) * std::pow(b, 1.0 / pair.q());
  const double rel = a_err / (pair.p() * a) + b_err / (pair.q() * b) + k_rel_err + 8.0 * kEps;
  return {r, r * rel};
}

std::string pair_text(const HolderPair& pair) { return "p=" + format_shortest(pair.p()); }

std::string params_text(const KernelParams& params) {
  return "lambda=" + format_shortest(params.lambda) + ";gamma=" + format_shortest(params.gamma_shift) +
         ";n=" + std::to_string(params.n);
}

const char* convention_text(ShiftConvention c) {
  return c == ShiftConvention::Homogeneous ? "homogeneous" : "literal";
}

std::string weight_text(double w) { return format_shortest(w); }

// q(n+1) - p g - l - 1: the y-weight with the shift scaled by p instead of q.
double unsymmetrized_y_weight(const HolderPair& pair, const KernelParams& params) {
  return pair.q() * (params.n + 1) - pair.p() * params.gamma_shift - params.lambda - 1.0;
}

void note_quad(std::vector<std::string>& notes, const QuadResult& r, const char* what) {
  if (!r.converged) {
    notes.emplace_back(std::string(what) + " did not reach tolerance");
  }
}

}  // namespace

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds:
      return "HOLDS";
    case Verdict::HoldsWithinError:
      return "HOLDS_WITHIN_ERROR";
    case Verdict::Violated:
      return "VIOLATED";
    case Verdict::Inadmissible:
      return "INADMISSIBLE";
  }
  return "UNKNOWN";
}

VerificationReport make_report(std::string id, std::string descriptor, double lhs, double lhs_error, double rhs,
                               double rhs_error) {
  VerificationReport r;
  r.inequality_id = std::move(id);
  r.instance_descriptor = std::move(descriptor);
  r.lhs = lhs;
  r.lhs_error = lhs_error;
  r.rhs = rhs;
  r.rhs_error = rhs_error;
  r.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
  if (lhs + lhs_error <= rhs - rhs_error) {
    r.verdict = Verdict::Holds;
  } else if (lhs - lhs_error > rhs + rhs_error) {
    r.verdict = Verdict::Violated;
  } else {
    r.verdict = Verdict::HoldsWithinError;
  }
  return r;
}

VerificationReport inadmissible_report(std::string id, std::string descriptor, std::vector<std::string> reasons) {
  VerificationReport r;
  r.inequality_id = std::move(id);
  r.instance_descriptor = std::move(descriptor);
  r.verdict = Verdict::Inadmissible;
  r.notes = std::move(reasons);
  return r;
}

// ---------------------------------------------------------------------------

VerificationReport verify_hilbert_integral(const TestFunction& f, const TestFunction& g, const HolderPair& pair,
                                           const VerifyOptions& opts) {
  const std::string desc = "f=" + f.description() + ";g=" + g.description() + ";" + pair_text(pair);
  if (f.is_zero() || g.is_zero()) {
    return inadmissible_report(ids::kHilbertIntegral, desc, {"zero function (norms must be positive)"});
  }
  const QuadOptions q = quad_options(opts);
  QuadResult lhs;
  try {
    lhs = integrate_kernel_double(f, g, 1.0, q);
  } catch (const DivergenceDetected& e) {
    return inadmissible_report(ids::kHilbertIntegral, desc, {e.what()});
  }
  const QuadResult na = integrate_weighted_power(f, 0, 0.0, pair.p(), q);
  const QuadResult nb = integrate_weighted_power(g, 0, 0.0, pair.q(), q);
  if (!(na.value > 0.0) || !(nb.value > 0.0)) {
    return inadmissible_report(ids::kHilbertIntegral, desc, {"zero norm"});
  }
  const auto [rhs, rhs_err] =
      norm_product(hilbert_constant(pair), 4.0 * kEps, na.value, na.error_bound, nb.value, nb.error_bound, pair);
  VerificationReport r = make_report(ids::kHilbertIntegral, desc, lhs.value, lhs.error_bound, rhs, rhs_err);
  note_quad(r.notes, lhs, "lhs quadrature");
  note_quad(r.notes, na, "f norm quadrature");
  note_quad(r.notes, nb, "g norm quadrature");
  return r;
}

namespace {

VerificationReport verify_discrete_impl(const char* id, const SequenceFamily& a, const SequenceFamily& b,
                                        const HolderPair& pair, int offset, const VerifyOptions& opts) {
  const std::string desc = "a=" + a.describe() + ";b=" + b.describe() + ";" + pair_text(pair);
  const int start = offset == 0 ? 1 : 0;
  if (a.start_index() != start || b.start_index() != start) {
    return inadmissible_report(id, desc, {"sequences must start at index " + std::to_string(start)});
  }
  if (a.is_zero() || b.is_zero()) {
    return inadmissible_report(id, desc, {"zero norm (norms must be positive)"});
  }
  SumWithBound na{};
  SumWithBound nb{};
  try {
    na = lp_norm_power(a, pair.p(), opts.tol, opts.caps);
    nb = lp_norm_power(b, pair.q(), opts.tol, opts.caps);
  } catch (const DomainError& e) {
    return inadmissible_report(id, desc, {e.what()});
  }
  const SeriesResult lhs = double_sum_kernel(a, b, offset, opts.tol, series_options(opts, pair));
  const auto [rhs, rhs_err] =
      norm_product(hilbert_constant(pair), 4.0 * kEps, na.value, na.error_bound, nb.value, nb.error_bound, pair);
  VerificationReport r = make_report(id, desc, lhs.value, lhs.error_bound, rhs, rhs_err);
  if (!lhs.converged) {
    r.notes.emplace_back("double series truncated at head " + std::to_string(lhs.head_terms) +
                         " before reaching tolerance");
  }
  return r;
}

}  // namespace

VerificationReport verify_hilbert_discrete(const SequenceFamily& a, const SequenceFamily& b,
                                           const HolderPair& pair, const VerifyOptions& opts) {
  return verify_discrete_impl(ids::kHilbertDiscrete, a, b, pair, 0, opts);
}

VerificationReport verify_lemma_offset_discrete(const SequenceFamily& c, const SequenceFamily& d,
                                                const HolderPair& pair, const VerifyOptions& opts) {
  return verify_discrete_impl(ids::kOffsetDiscrete, c, d, pair, 1, opts);
}

VerificationReport verify_sum_discrete(const SumDiscreteInstance& inst, const VerifyOptions& opts) {
  const HolderPair& pair = inst.pair;
  const std::string desc = "a=" + inst.a.describe() + ";b=" + inst.b.describe() + ";c=" + inst.c.describe() +
                           ";d=" + inst.d.describe() + ";" + pair_text(pair) + ";k=" + std::to_string(inst.k) +
                           ";summand=a_m*b_n (independent indices)";
  const char* id = ids::kSumDiscrete;
  if (inst.k < 1) {
    return inadmissible_report(id, desc, {"multiplicity k must be a positive integer"});
  }
  if (inst.a.start_index() != 1 || inst.b.start_index() != 1 || inst.c.start_index() != 0 ||
      inst.d.start_index() != 0) {
    return inadmissible_report(id, desc, {"a, b must start at 1 and c, d at 0"});
  }
  const double k = inst.k;
  SumWithBound na{}, nb{}, nc{}, nd{};
  try {
    na = lp_norm_power(inst.a, pair.p(), opts.tol, opts.caps);
    nb = lp_norm_power(inst.b, pair.q(), opts.tol, opts.caps);
    // c_0 and d_0 enter with weight k like the rest of c and d.
    nc = lp_norm_power(inst.c, pair.p(), opts.tol, opts.caps);
    nd = lp_norm_power(inst.d, pair.q(), opts.tol, opts.caps);
  } catch (const DomainError& e) {
    return inadmissible_report(id, desc, {e.what()});
  }
  const double x = na.value + k * nc.value;
  const double y = nb.value + k * nd.value;
  if (!(x > 0.0) || !(y > 0.0)) {
    return inadmissible_report(id, desc, {"zero norm (combined norms must be positive)"});
  }

  const SeriesOptions so = series_options(opts, pair);
  SeriesResult ab;
  if (!inst.a.is_zero() && !inst.b.is_zero()) {
    ab = double_sum_kernel(inst.a, inst.b, 0, opts.tol, so);
  }
  SeriesResult cd;
  const SequenceFamily c_rest = inst.c.without_leading(1);
  const SequenceFamily d_rest = inst.d.without_leading(1);
  if (!c_rest.is_zero() && !d_rest.is_zero()) {
    cd = double_sum_kernel(c_rest, d_rest, 1, opts.tol, so);
  }
  const double c0d0 = inst.c.term(0) * inst.d.term(0);
  const double lhs = k * c0d0 + ab.value + k * cd.value;
  const double lhs_err = ab.error_bound + k * cd.error_bound + 4.0 * kEps * lhs;
  const auto [rhs, rhs_err] =
      norm_product(hilbert_constant(pair), 4.0 * kEps, x, na.error_bound + k * nc.error_bound, y,
                   nb.error_bound + k * nd.error_bound, pair);
  VerificationReport r = make_report(id, desc, lhs, lhs_err, rhs, rhs_err);
  if (!ab.converged || !cd.converged) {
    r.notes.emplace_back("double series truncated before reaching tolerance");
  }
  return r;
}

// ---------------------------------------------------------------------------

VerificationReport verify_weighted_integral(const TestFunction& f, const TestFunction& g, const HolderPair& pair,
                                            const KernelParams& params, WeightVariant variant,
                                            const VerifyOptions& opts) {
  const bool is_c = variant == WeightVariant::C;
  const char* id = is_c ? ids::kWeightedC : ids::kWeightedCPrime;
  const WeightExponents wf = weight_exponents(pair, params, Side::First, opts.convention);
  const WeightExponents wg = weight_exponents(pair, params, Side::Second, opts.convention);
  const double w_x = is_c ? wf.c_weight : wf.c_prime_weight;
  const double w_y = is_c ? wg.c_weight : wg.c_prime_weight;
  const std::string desc = "f=" + f.description() + ";g=" + g.description() + ";" + pair_text(pair) + ";" +
                           params_text(params) + ";variant=" + (is_c ? "C" : "C'") +
                           ";x-weight=" + weight_text(w_x) + ";y-weight=" + weight_text(w_y) +
                           (is_c ? std::string() : ";unsymmetrized-y-weight=" + weight_text(unsymmetrized_y_weight(pair, params))) +
                           ";powers=(p,q);convention=" + convention_text(opts.convention);

  const WeightSet ws = is_c ? WeightSet::C : WeightSet::CPrime;
  std::vector<std::string> reasons = check_admissible(f, pair, params, Side::First, ws, opts.convention);
  for (auto& v : check_admissible(g, pair, params, Side::Second, ws, opts.convention)) {
    reasons.push_back("g: " + v);
  }
  double constant = 0.0;
  try {
    constant = is_c ? constant_c(pair, params) : bound_constants(pair, params, opts.convention).c_prime;
  } catch (const DomainError& e) {
    reasons.emplace_back(e.what());
  }
  if (!reasons.empty()) {
    return inadmissible_report(id, desc, std::move(reasons));
  }

  const QuadOptions q = quad_options(opts);
  QuadResult lhs;
  try {
    lhs = integrate_kernel_double(f, g, params.lambda, q);
  } catch (const DivergenceDetected& e) {
    return inadmissible_report(id, desc, {e.what()});
  }
  const QuadResult na = integrate_weighted_power(f, params.n, w_x, pair.p(), q);
  const QuadResult nb = integrate_weighted_power(g, params.n, w_y, pair.q(), q);
  if (!(na.value > 0.0) || !(nb.value > 0.0)) {
    return inadmissible_report(id, desc, {"zero weighted norm"});
  }
  const auto [rhs, rhs_err] =
      norm_product(constant, kConstantRelError, na.value, na.error_bound, nb.value, nb.error_bound, pair);
  VerificationReport r = make_report(id, desc, lhs.value, lhs.error_bound, rhs, rhs_err);
  note_quad(r.notes, lhs, "lhs quadrature");
  note_quad(r.notes, na, "f norm quadrature");
  note_quad(r.notes, nb, "g norm quadrature");
  return r;
}

WeightedNorms weighted_norms(const TestFunction& f, const TestFunction& g, const HolderPair& pair,
                             const KernelParams& params, const VerifyOptions& opts) {
  const QuadOptions q = quad_options(opts);
  const WeightExponents wf = weight_exponents(pair, params, Side::First, opts.convention);
  const WeightExponents wg = weight_exponents(pair, params, Side::Second, opts.convention);
  const QuadResult f1 = integrate_weighted_power(f, params.n, wf.c_weight, pair.p(), q);
  const QuadResult f2 = integrate_weighted_power(f, params.n, wf.c_prime_weight, pair.p(), q);
  const QuadResult g1 = integrate_weighted_power(g, params.n, wg.c_weight, pair.q(), q);
  const QuadResult g2 = integrate_weighted_power(g, params.n, wg.c_prime_weight, pair.q(), q);
  return {f1.value, f1.error_bound, f2.value, f2.error_bound, g1.value, g1.error_bound, g2.value, g2.error_bound};
}

VerificationReport verify_sum_integral(const SumIntegralInstance& inst, const VerifyOptions& opts) {
  const HolderPair& pair = inst.pair;
  const KernelParams& params = inst.params;
  const char* id = ids::kSumIntegral;
  const WeightExponents wf = weight_exponents(pair, params, Side::First, opts.convention);
  const WeightExponents wg = weight_exponents(pair, params, Side::Second, opts.convention);
  const std::string desc = "f=" + inst.f.description() + ";g=" + inst.g.description() + ";" + pair_text(pair) +
                           ";" + params_text(params) + ";m=" + std::to_string(inst.m) +
                           ";x-weights=(" + weight_text(wf.c_weight) + "," + weight_text(wf.c_prime_weight) +
                           ");y-weights=(" + weight_text(wg.c_weight) + "," + weight_text(wg.c_prime_weight) +
                           ");unsymmetrized-y-weight=" + weight_text(unsymmetrized_y_weight(pair, params)) +
                           ";powers=(p,q);convention=" + convention_text(opts.convention);

  std::vector<std::string> reasons = check_admissible(inst.f, pair, params, Side::First, WeightSet::Both, opts.convention);
  for (auto& v : check_admissible(inst.g, pair, params, Side::Second, WeightSet::Both, opts.convention)) {
    reasons.push_back("g: " + v);
  }
  if (inst.m < 1) {
    reasons.emplace_back("multiplicity m must be a positive integer");
  }
  BoundConstants k{};
  try {
    k = bound_constants(pair, params, opts.convention);
  } catch (const DomainError& e) {
    reasons.emplace_back(e.what());
  }
  if (!reasons.empty()) {
    return inadmissible_report(id, desc, std::move(reasons));
  }

  const QuadOptions q = quad_options(opts);
  QuadResult lhs;
  try {
    lhs = integrate_kernel_double(inst.f, inst.g, params.lambda, q);
  } catch (const DivergenceDetected& e) {
    return inadmissible_report(id, desc, {e.what()});
  }
  const WeightedNorms w = weighted_norms(inst.f, inst.g, pair, params, opts);
  const double m = inst.m;
  const double x = k.c * w.c_f + m * k.c_prime * w.c_prime_f;
  const double y = k.c * w.c_g + m * k.c_prime * w.c_prime_g;
  if (!(x > 0.0) || !(y > 0.0)) {
    return inadmissible_report(id, desc, {"zero weighted norm"});
  }
  const double x_err = k.c * w.c_f_err + m * k.c_prime * w.c_prime_f_err + kConstantRelError * x;
  const double y_err = k.c * w.c_g_err + m * k.c_prime * w.c_prime_g_err + kConstantRelError * y;
  const auto [rhs, rhs_err] = norm_product(1.0 / (m + 1.0), 0.0, x, x_err, y, y_err, pair);
  VerificationReport r = make_report(id, desc, lhs.value, lhs.error_bound, rhs, rhs_err);
  note_quad(r.notes, lhs, "lhs quadrature");
  return r;
}

// ---------------------------------------------------------------------------

VerificationReport check_superadditivity(std::span<const double> a, std::span<const double> b,
                                         std::span<const double> alphas) {
  if (a.empty() || a.size() != b.size() || a.size() != alphas.size()) {
    throw DomainError("check_superadditivity: a, b and alphas must be nonempty and of equal length");
  }
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] >= 0.0) || !std::isfinite(a[i])) {
      throw DomainError("check_superadditivity: a_i must be finite and nonnegative");
    }
    if (!(b[i] > 0.0) || !std::isfinite(b[i])) {
      throw DomainError("check_superadditivity: b_i must be finite and positive");
    }
    if (!(alphas[i] > 0.0)) {
      throw DomainError("check_superadditivity: weights must be positive");
    }
    weight_sum += alphas[i];
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    throw DomainError("check_superadditivity: weights sum to " + format_shortest(weight_sum) + ", not 1");
  }
  double prod_a = 1.0;
  double prod_b = 1.0;
  double prod_ab = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    prod_a *= std::pow(a[i], alphas[i]);
    prod_b *= std::pow(b[i], alphas[i]);
    prod_ab *= std::pow(a[i] + b[i], alphas[i]);
  }
  const double lhs = prod_a + prod_b;
  const double per_factor = 4.0 * kEps * static_cast<double>(a.size());
  std::string desc = "n=" + std::to_string(a.size()) + ";a=[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    desc += (i ? "," : "") + format_shortest(a[i]);
  }
  desc += "];b=[";
  for (std::size_t i = 0; i < b.size(); ++i) {
    desc += (i ? "," : "") + format_shortest(b[i]);
  }
  desc += "];alpha=[";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    desc += (i ? "," : "") + format_shortest(alphas[i]);
  }
  desc += "]";
  return make_report(ids::kSuperadditivity, desc, lhs, per_factor * lhs, prod_ab, per_factor * prod_ab);
}

}  // namespace hforge
