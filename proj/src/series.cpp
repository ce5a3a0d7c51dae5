#include "hforge/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hforge/errors.hpp"
#include "hforge/kernels.hpp"
#include "hforge/numfmt.hpp"
#include "hforge/specialfn.hpp"

namespace hforge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNormTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Head {
  double value;
  double rounding;
};

Head head_sum(const SequenceFamily& a, const SequenceFamily& b, std::int64_t len_a, std::int64_t len_b,
              int offset) {
  const std::vector<double> ha = a.head(len_a);
  const std::vector<double> hb = b.head(len_b);
  const std::vector<double> diag = kernels::diagonal_sums(ha, hb);
  // Head index i is m = start + i, so the diagonal t carries m + n + offset = t + 2 start + offset.
  const double shift = 2.0 * a.start_index() + offset;
  const double value = kernels::reciprocal_weighted_sum(diag, shift);
  const double n_ops = static_cast<double>(std::min(len_a, len_b) + static_cast<std::int64_t>(diag.size()) + 32);
  return {value, n_ops * kEps * value};
}

// Upper bound on sum_{m >= from, n} a_m b_n / (m + n + offset).
double strip_bound(const SequenceFamily& a, std::int64_t from, const SequenceFamily& b, int offset,
                   const SeriesOptions& opts) {
  double best = kInf;
  auto upper = [&](const SequenceFamily& s, double p, std::int64_t start) {
    const SumWithBound r = lp_tail_power(s, p, start, kNormTol, opts.caps);
    return r.value + r.error_bound;
  };

  std::vector<double> candidates;
  if (opts.hint_p) {
    candidates.push_back(*opts.hint_p);
    candidates.push_back(HolderPair(*opts.hint_p).q());
  }
  for (double p : {2.0, 1.25, 1.5, 3.0, 5.0}) {
    candidates.push_back(p);
  }
  for (double p : candidates) {
    try {
      const HolderPair pair(p);
      const double ta = upper(a, pair.p(), from);
      const double nb = upper(b, pair.q(), b.start_index());
      best = std::min(best, hilbert_constant(pair) * std::pow(ta, 1.0 / pair.p()) * std::pow(nb, 1.0 / pair.q()));
    } catch (const DomainError&) {
      // Not summable at this exponent.
    } catch (const ToleranceUnreachable&) {
    }
  }
  try {
    const double ta = upper(a, 1.0, from);
    const double nb = upper(b, 1.0, b.start_index());
    best = std::min(best, ta * nb / (static_cast<double>(from + b.start_index() + offset)));
  } catch (const DomainError&) {
  } catch (const ToleranceUnreachable&) {
  }
  return best;
}

}  // namespace

SeriesResult double_sum_kernel(const SequenceFamily& a_in, const SequenceFamily& b_in, int offset, double tol,
                               const SeriesOptions& opts) {
  if (offset != 0 && offset != 1) {
    throw IndexMismatch("double_sum_kernel: offset must be 0 or 1");
  }
  const int want_start = offset == 0 ? 1 : 0;
  if (a_in.start_index() != want_start || b_in.start_index() != want_start) {
    throw IndexMismatch("double_sum_kernel: offset " + std::to_string(offset) + " requires start index " +
                        std::to_string(want_start));
  }
  if (!(tol > 0.0)) {
    throw DomainError("double_sum_kernel: tol must be positive");
  }
  if (a_in.is_zero() || b_in.is_zero()) {
    return {};
  }

  // Canonical argument order makes the result bitwise symmetric.
  const bool swap = b_in.describe() < a_in.describe();
  const SequenceFamily& a = swap ? b_in : a_in;
  const SequenceFamily& b = swap ? a_in : b_in;
  const int start = want_start;
  const std::int64_t end_a = a.finite_end();
  const std::int64_t end_b = b.finite_end();

  if (end_a >= 0 && end_b >= 0) {
    const std::int64_t la = end_a - start;
    const std::int64_t lb = end_b - start;
    if (static_cast<double>(la) * static_cast<double>(lb) > static_cast<double>(opts.caps.max_pairs)) {
      throw ToleranceUnreachable("double_sum_kernel: " + std::to_string(la) + " x " + std::to_string(lb) +
                                 " terms exceed the pair cap");
    }
    const Head h = head_sum(a, b, la, lb, offset);
    SeriesResult out;
    out.value = h.value;
    out.error_bound = h.rounding;
    out.converged = out.error_bound <= tol * std::max(1.0, std::abs(out.value));
    return out;
  }

  std::int64_t m = 64;
  SeriesResult best;
  for (;;) {
    const std::int64_t la = end_a >= 0 ? end_a - start : m;
    const std::int64_t lb = end_b >= 0 ? end_b - start : m;
    const Head h = head_sum(a, b, la, lb, offset);
    double tail = 0.0;
    if (end_a < 0) {
      tail += strip_bound(a, start + la, b, offset, opts);
    }
    if (end_b < 0) {
      tail += strip_bound(b, start + lb, a, offset, opts);
    }
    best.value = h.value + 0.5 * tail;
    best.error_bound = 0.5 * tail + h.rounding;
    best.head_terms = m;
    best.converged = best.error_bound <= tol * std::max(1.0, std::abs(best.value));
    if (best.converged) {
      return best;
    }
    const std::int64_t next = 2 * m;
    const double next_pairs = static_cast<double>(end_a >= 0 ? la : next) * static_cast<double>(end_b >= 0 ? lb : next);
    if (next > opts.max_head || next_pairs > static_cast<double>(opts.caps.max_pairs)) {
      if (opts.strict) {
        throw ToleranceUnreachable("double_sum_kernel: tolerance " + format_shortest(tol) +
                                   " not reached; best error bound " + format_shortest(best.error_bound));
      }
      return best;
    }
    m = next;
  }
}

}  // namespace hforge
