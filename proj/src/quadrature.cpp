#include "hforge/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hforge/errors.hpp"
#include "hforge/numfmt.hpp"

namespace hforge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// 15-point Kronrod abscissae (nonnegative half) and weights; 7-point Gauss weights
// on the odd-indexed Kronrod nodes plus the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Octaves of geometric grading seeded toward singular or mapped endpoints.
constexpr int kGradedOctaves = 20;
// Per-call budget of the inner u-integrals; their residual error is carried into the outer bound.
constexpr std::int64_t kInnerCap = 6000;

/// A panel either samples f directly on [a, b] or, when mapped, samples
/// f(c/t) c/t^2 for t in [a, b] (a piece [c, inf) pulled back to (0, 1]).
struct Panel {
  double a;
  double b;
  bool mapped;
  double c;
  double value;
  double error;
  double aux;  // Kronrod estimate of the auxiliary density (integrated inner errors)
};

struct Sample {
  double value;
  double aux;
};

template <class F>
class AdaptiveEngine {
 public:
  AdaptiveEngine(const F& f, const QuadOptions& opts) : f_(f), opts_(opts) {}

  void seed(double a, double b, bool mapped, double c) { panels_.push_back(evaluate(a, b, mapped, c)); }

  // Seeds [lo, hi] with panels refined geometrically toward lo (which is 0).
  void seed_graded_toward_zero(double hi, bool mapped, double c) {
    double right = hi;
    for (int k = 0; k < kGradedOctaves; ++k) {
      seed(0.5 * right, right, mapped, c);
      right *= 0.5;
    }
    seed(0.0, right, mapped, c);
  }

  void seed_octaves(double lo, double hi) {
    double left = lo;
    while (hi / left > 4.0) {
      seed(left, 2.0 * left, false, 0.0);
      left *= 2.0;
    }
    seed(left, hi, false, 0.0);
  }

  QuadResult run() {
    std::make_heap(panels_.begin(), panels_.end(), by_error);
    for (;;) {
      const double value = total_value();
      const double error = total_error();
      if (error <= opts_.target(value)) {
        return finish(true);
      }
      if (evaluations_ + 30 > opts_.max_evaluations) {
        return finish(false);
      }
      std::pop_heap(panels_.begin(), panels_.end(), by_error);
      const Panel worst = panels_.back();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b)) {
        // Panel can no longer be split in floating point.
        return finish(false);
      }
      panels_.back() = evaluate(worst.a, mid, worst.mapped, worst.c);
      std::push_heap(panels_.begin(), panels_.end(), by_error);
      panels_.push_back(evaluate(mid, worst.b, worst.mapped, worst.c));
      std::push_heap(panels_.begin(), panels_.end(), by_error);
    }
  }

  double aux_total() const {
    double s = 0.0;
    for (const auto& p : panels_) {
      s += p.aux;
    }
    return s;
  }

 private:
  static bool by_error(const Panel& l, const Panel& r) { return l.error < r.error; }

  Sample sample(double t, bool mapped, double c) {
    ++evaluations_;
    Sample s{};
    if (!mapped) {
      s = f_(t);
    } else {
      const double x = c / t;
      if (std::isinf(x)) {
        return s;
      }
      s = f_(x);
      if (s.value != 0.0 || s.aux != 0.0) {
        const double jac = c / (t * t);
        s.value *= jac;
        s.aux *= jac;
      }
    }
    if (!std::isfinite(s.value) || !std::isfinite(s.aux)) {
      throw DomainError("integrand returned a non-finite value at interior point " +
                        format_shortest(mapped ? c / t : t));
    }
    return s;
  }

  Panel evaluate(double a, double b, bool mapped, double c) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 15> fv{};
    double aux = 0.0;
    const Sample sc = sample(centre, mapped, c);
    fv[7] = sc.value;
    double resk = kWgk[7] * sc.value;
    double resg = kWg[3] * sc.value;
    double resabs = std::abs(resk);
    aux += kWgk[7] * sc.aux;
    for (int j = 0; j < 7; ++j) {
      const double dx = half * kXgk[j];
      const Sample s1 = sample(centre - dx, mapped, c);
      const Sample s2 = sample(centre + dx, mapped, c);
      fv[j] = s1.value;
      fv[14 - j] = s2.value;
      resk += kWgk[j] * (s1.value + s2.value);
      resabs += kWgk[j] * (std::abs(s1.value) + std::abs(s2.value));
      aux += kWgk[j] * (s1.aux + s2.aux);
      if (j % 2 == 1) {
        resg += kWg[j / 2] * (s1.value + s2.value);
      }
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) {
      resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    }
    const double ah = std::abs(half);
    resk *= half;
    resg *= half;
    resabs *= ah;
    resasc *= ah;
    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > kTiny / (50.0 * kEps)) {
      err = std::max(50.0 * kEps * resabs, err);
    }
    return Panel{a, b, mapped, c, resk, err, aux * half};
  }

  double total_value() const {
    double s = 0.0;
    for (const auto& p : panels_) {
      s += p.value;
    }
    return s;
  }

  double total_error() const {
    double s = 0.0;
    for (const auto& p : panels_) {
      s += p.error;
    }
    return s;
  }

  QuadResult finish(bool converged) {
    // Summation order fixed by interval position so results do not depend on heap layout.
    std::sort(panels_.begin(), panels_.end(), [](const Panel& l, const Panel& r) {
      if (l.mapped != r.mapped) {
        return !l.mapped;
      }
      if (l.c != r.c) {
        return l.c < r.c;
      }
      return l.a < r.a;
    });
    QuadResult out;
    out.value = total_value();
    out.error_bound = total_error() + 4.0 * kEps * std::abs(out.value);
    out.evaluations = evaluations_;
    out.converged = converged && out.error_bound <= opts_.target(out.value);
    return out;
  }

  const F& f_;
  QuadOptions opts_;
  std::vector<Panel> panels_;
  std::int64_t evaluations_ = 0;
};

// Seeds an engine for [lower, upper] with the grading rules of integrate_range.
template <class F>
void seed_range(AdaptiveEngine<F>& engine, double lower, double upper) {
  if (std::isinf(upper)) {
    const double split = std::max(lower, 1.0);
    if (lower < split) {
      seed_range(engine, lower, split);
    }
    engine.seed_graded_toward_zero(1.0, true, split);
    return;
  }
  if (lower == 0.0) {
    engine.seed_graded_toward_zero(upper, false, 0.0);
    return;
  }
  engine.seed_octaves(lower, upper);
}

void validate_opts(const QuadOptions& opts) {
  if (!(opts.abs_tol > 0.0) && !(opts.rel_tol > 0.0)) {
    throw DomainError("quadrature: a positive tolerance is required");
  }
  if (opts.max_evaluations <= 0) {
    throw DomainError("quadrature: evaluation cap must be positive");
  }
}

}  // namespace

double QuadOptions::target(double value) const noexcept {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

QuadResult integrate_range(const Integrand& f, double lower, double upper, const QuadOptions& opts) {
  validate_opts(opts);
  if (!(lower >= 0.0) || !(upper > lower)) {
    throw DomainError("integrate_range: need 0 <= lower < upper");
  }
  auto wrapped = [&f](double x) { return Sample{f(x), 0.0}; };
  AdaptiveEngine engine(wrapped, opts);
  seed_range(engine, lower, upper);
  return engine.run();
}

QuadResult integrate_semi_infinite(const Integrand& f, double tol) {
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.max_evaluations = default_caps().max_evaluations;
  return integrate_semi_infinite(f, opts);
}

QuadResult integrate_semi_infinite(const Integrand& f, const QuadOptions& opts) {
  return integrate_range(f, 0.0, std::numeric_limits<double>::infinity(), opts);
}

QuadResult integrate_weighted_power(const TestFunction& f, int order, double weight, double power,
                                    const QuadOptions& opts) {
  const Support sup = f.support();
  auto integrand = [&](double x) {
    const double v = eval_derivative(f, order, x);
    if (v == 0.0) {
      return 0.0;
    }
    return std::exp(weight * std::log(x) + power * std::log(std::abs(v)));
  };
  return integrate_range(integrand, sup.lower, sup.upper, opts);
}

// ---------------------------------------------------------------------------

namespace {

struct KernelPass {
  QuadResult result;
  double inner_error = 0.0;
};

KernelPass kernel_pass(const TestFunction& f, const TestFunction& g, double lambda, const QuadOptions& outer,
                       double inner_rel, std::int64_t inner_cap) {
  const Support sf = f.support();
  const Support sg = g.support();
  std::vector<double> cuts = {sf.lower + sg.lower, sf.upper + sg.lower, sf.lower + sg.upper,
                              sf.upper + sg.upper};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::int64_t inner_evals = 0;
  QuadOptions inner;
  inner.abs_tol = kTiny;
  inner.rel_tol = inner_rel;
  inner.max_evaluations = std::min(inner_cap, kInnerCap);

  auto outer_integrand = [&](double s) -> Sample {
    // u-range where both factors are inside their supports.
    const double u_lo = std::max({0.0, sf.lower / s, 1.0 - sg.upper / s});
    const double u_hi = std::min({1.0, sf.upper / s, 1.0 - sg.lower / s});
    if (!(u_hi > u_lo)) {
      return {0.0, 0.0};
    }
    auto h = [&](double u) { return f(s * u) * g(s * (1.0 - u)); };
    QuadResult r;
    {
      auto wrapped = [&h](double u) { return Sample{h(u), 0.0}; };
      AdaptiveEngine engine(wrapped, inner);
      engine.seed(u_lo, u_hi, false, 0.0);
      r = engine.run();
    }
    inner_evals += r.evaluations;
    const double weight = std::pow(s, 1.0 - lambda);
    return {weight * r.value, weight * r.error_bound};
  };

  AdaptiveEngine engine(outer_integrand, outer);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    seed_range(engine, cuts[i], cuts[i + 1]);
  }
  KernelPass pass;
  pass.result = engine.run();
  pass.result.evaluations = inner_evals;
  // The Kronrod rule integrates the inner error density; doubled for the rule's own error.
  pass.inner_error = 2.0 * std::abs(engine.aux_total());
  return pass;
}

}  // namespace

QuadResult integrate_kernel_double(const TestFunction& f, const TestFunction& g, double lambda, double tol) {
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.max_evaluations = default_caps().max_evaluations;
  return integrate_kernel_double(f, g, lambda, opts);
}

QuadResult integrate_kernel_double(const TestFunction& f, const TestFunction& g, double lambda,
                                   const QuadOptions& opts) {
  validate_opts(opts);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("integrate_kernel_double: lambda must be positive");
  }
  if (f.is_zero() || g.is_zero()) {
    return QuadResult{0.0, 0.0, 1, true};
  }
  const Support sf = f.support();
  const Support sg = g.support();
  if (sf.lower == 0.0 && sg.lower == 0.0) {
    // Near s = 0 the integrand behaves like s^(1 - lambda + e_f + e_g).
    const double e = 1.0 - lambda + f.leading_exponent_at_zero(0) + g.leading_exponent_at_zero(0);
    if (!(e > -1.0)) {
      throw DivergenceDetected("kernel double integral diverges at the origin (exponent " + format_shortest(e) +
                               " ≤ −1)");
    }
  }

  // Coarse pass sizes the relative inner tolerance for the budget split.
  QuadOptions coarse;
  coarse.abs_tol = kTiny;
  coarse.rel_tol = 1e-6;
  coarse.max_evaluations = std::max<std::int64_t>(opts.max_evaluations / 10, 1000);
  const KernelPass estimate = kernel_pass(f, g, lambda, coarse, 1e-8, opts.max_evaluations);
  const double magnitude = std::max(std::abs(estimate.result.value), kTiny);
  const double budget = opts.target(magnitude);

  QuadOptions outer = opts;
  outer.abs_tol = 0.5 * budget;
  outer.rel_tol = 0.0;
  const double inner_rel = std::clamp(0.25 * budget / magnitude, 1e-14, 1e-3);
  const KernelPass pass = kernel_pass(f, g, lambda, outer, inner_rel, opts.max_evaluations);

  QuadResult out = pass.result;
  out.evaluations += estimate.result.evaluations;
  out.error_bound = pass.result.error_bound + pass.inner_error;
  out.converged = pass.result.converged && out.error_bound <= opts.target(out.value);
  return out;
}

}  // namespace hforge
