#include "hforge/specialfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hforge/errors.hpp"
#include "hforge/numfmt.hpp"

namespace hforge {

namespace {

// Lanczos approximation, g = 7, nine terms. Relative error near 1e-15 on x >= 0.5.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Largest x with Gamma(x) finite in double precision.
constexpr double kGammaMaxArg = 171.61447887182298;

// Partial-fraction sum A(z) for Gamma(z + 1), z = x - 1.
double lanczos_sum(double z) {
  double acc = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
    acc += kLanczosCoeff[i] / (z + static_cast<double>(i));
  }
  return acc;
}

double sin_pi(double x) {
  // Reduce to [-1, 1] first so sin(pi x) keeps its relative accuracy near integers.
  double r = std::remainder(x, 2.0);
  return std::sin(std::numbers::pi * r);
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(what) + ": argument must be positive, got " + format_shortest(x));
  }
}

}  // namespace

HolderPair::HolderPair(double p) : p_(p), q_(0.0) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    throw DomainError("HolderPair: exponent p must satisfy p > 1, got " + format_shortest(p));
  }
  q_ = p / (p - 1.0);
}

HolderPair HolderPair::swapped() const noexcept { return HolderPair(q_, p_); }

double gamma(double x) {
  require_positive(x, "gamma");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    const double value = std::numbers::pi / (sin_pi(x) * gamma(1.0 - x));
    if (!std::isfinite(value)) {
      throw OverflowError("gamma: result not representable for x = " + format_shortest(x));
    }
    return value;
  }
  if (x > kGammaMaxArg) {
    throw OverflowError("gamma: result not representable for x = " + format_shortest(x));
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) is split in two halves so it does not overflow before e^-t scales it down.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  const double value = std::sqrt(2.0 * std::numbers::pi) * half * std::exp(-t) * half * lanczos_sum(z);
  if (!std::isfinite(value)) {
    throw OverflowError("gamma: result not representable for x = " + format_shortest(x));
  }
  return value;
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x < 0.5) {
    return std::log(std::numbers::pi / std::abs(sin_pi(x))) - log_gamma(1.0 - x);
  }
  // Exact zeros of ln Gamma.
  if (x == 1.0 || x == 2.0) {
    return 0.0;
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double hilbert_constant(const HolderPair& pair) {
  // sin(pi/p) = sin(pi/q); evaluate at the smaller reciprocal so swapping p and q is exact.
  const double u = std::min(1.0 / pair.p(), 1.0 / pair.q());
  return std::numbers::pi / std::sin(std::numbers::pi * u);
}

double constant_c(const HolderPair& pair, const KernelParams& params) {
  const double a = params.lambda / pair.p() - params.n;
  const double b = params.lambda / pair.q() - params.n;
  if (!(a > 0.0)) {
    throw DomainError("Gamma argument λ/p − n = " + format_shortest(a) + " not positive");
  }
  if (!(b > 0.0)) {
    throw DomainError("Gamma argument λ/q − n = " + format_shortest(b) + " not positive");
  }
  require_positive(params.lambda, "constant_c (lambda)");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(params.lambda));
}

BoundConstants bound_constants(const HolderPair& pair, const KernelParams& params,
                               ShiftConvention convention) {
  const double lp = params.lambda / pair.p();
  const double lq = params.lambda / pair.q();
  const double n = params.n;
  const double g = params.gamma_shift;
  BoundConstants out{};
  out.gamma_args = {lp - n, lq - n,
                    convention == ShiftConvention::Literal ? lp - g - n : lp + g - n, lq - g - n};
  static constexpr std::array<const char*, 4> kLiteralNames = {"λ/p − n", "λ/q − n", "λ/p − γ − n",
                                                               "λ/q − γ − n"};
  static constexpr std::array<const char*, 4> kHomogeneousNames = {"λ/p − n", "λ/q − n",
                                                                   "λ/p + γ − n", "λ/q − γ − n"};
  const auto& names = convention == ShiftConvention::Literal ? kLiteralNames : kHomogeneousNames;
  for (std::size_t i = 0; i < out.gamma_args.size(); ++i) {
    if (!(out.gamma_args[i] > 0.0)) {
      throw DomainError(std::string("Gamma argument ") + names[i] + " = " +
                        format_shortest(out.gamma_args[i]) + " not positive");
    }
  }
  if (!(params.lambda > 0.0)) {
    throw DomainError("bound_constants: λ must be positive");
  }
  const double lg_lambda = log_gamma(params.lambda);
  out.c = std::exp(log_gamma(out.gamma_args[0]) + log_gamma(out.gamma_args[1]) - lg_lambda);
  out.c_prime = std::exp(log_gamma(out.gamma_args[2]) + log_gamma(out.gamma_args[3]) - lg_lambda);
  if (g == 0.0) {
    out.c_prime = out.c;
  }
  return out;
}

}  // namespace hforge
