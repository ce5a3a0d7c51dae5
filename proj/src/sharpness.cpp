#include "hforge/sharpness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "hforge/errors.hpp"
#include "hforge/funcspace.hpp"
#include "hforge/numfmt.hpp"

namespace hforge {

namespace {

ProbeResult from_report(double probe, const VerificationReport& r) {
  if (r.verdict == Verdict::Inadmissible) {
    std::string why = r.notes.empty() ? std::string("inadmissible") : r.notes.front();
    throw DomainError("sharpness probe " + format_shortest(probe) + ": " + why);
  }
  return {probe, r.lhs, r.lhs_error, r.rhs, r.rhs_error, r.ratio};
}

}  // namespace

ProbeResult extremal_ratio_integral(const HolderPair& pair, double T, double tol) {
  if (!(T > 1.0) || !std::isfinite(T)) {
    throw DomainError("extremal_ratio_integral: T must be finite and > 1, got " + format_shortest(T));
  }
  const TestFunction f = TestFunction::truncated_power(-1.0 / pair.p(), 1.0, T);
  const TestFunction g = TestFunction::truncated_power(-1.0 / pair.q(), 1.0, T);
  VerifyOptions opts;
  opts.tol = tol;
  return from_report(T, verify_hilbert_integral(f, g, pair, opts));
}

ProbeResult extremal_ratio_discrete(const HolderPair& pair, std::int64_t N, double tol) {
  if (N < 2) {
    throw DomainError("extremal_ratio_discrete: N must be >= 2, got " + std::to_string(N));
  }
  const SequenceFamily a(TruncatedPowerSeq{-1.0 / pair.p(), N}, 1);
  const SequenceFamily b(TruncatedPowerSeq{-1.0 / pair.q(), N}, 1);
  VerifyOptions opts;
  opts.tol = tol;
  return from_report(static_cast<double>(N), verify_hilbert_discrete(a, b, pair, opts));
}

std::vector<ProbeResult> sharpness_sweep(const HolderPair& pair, SharpnessMode mode, std::span<const double> probes,
                                         double tol, unsigned jobs) {
  // Validate everything before any work starts.
  for (double t : probes) {
    if (mode == SharpnessMode::Integral) {
      if (!(t > 1.0) || !std::isfinite(t)) {
        throw DomainError("sharpness: integral probes need T > 1, got " + format_shortest(t));
      }
    } else if (!(t >= 2.0) || t != std::floor(t) || t > 9.0e15) {
      throw DomainError("sharpness: discrete probes need an integer N >= 2, got " + format_shortest(t));
    }
  }
  std::vector<ProbeResult> out(probes.size());
  std::vector<std::exception_ptr> errors(probes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < probes.size(); i = next++) {
      try {
        out[i] = mode == SharpnessMode::Integral
                     ? extremal_ratio_integral(pair, probes[i], tol)
                     : extremal_ratio_discrete(pair, static_cast<std::int64_t>(probes[i]), tol);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(probes.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return out;
}

double ratio_error(const ProbeResult& r) {
  if (!(r.rhs > r.rhs_error)) {
    return std::numeric_limits<double>::infinity();
  }
  return (r.lhs_error + r.ratio * r.rhs_error) / (r.rhs - r.rhs_error);
}

bool monotone_approach(std::span<const ProbeResult> results) {
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double e = ratio_error(results[i]);
    if (!(results[i].ratio - e > 0.0) || !(results[i].ratio + e < 1.0)) {
      return false;
    }
    if (i > 0) {
      const double e_prev = ratio_error(results[i - 1]);
      if (!(results[i].ratio - e > results[i - 1].ratio + e_prev)) {
        return false;
      }
    }
  }
  return true;
}

void write_sharpness_csv(std::ostream& out, std::span<const ProbeResult> results) {
  out << "probe,lhs,lhs_error,rhs,rhs_error,ratio\n";
  for (const auto& r : results) {
    out << format_17(r.probe) << ',' << format_17(r.lhs) << ',' << format_17(r.lhs_error) << ','
        << format_17(r.rhs) << ',' << format_17(r.rhs_error) << ',' << format_17(r.ratio) << '\n';
  }
}

}  // namespace hforge
