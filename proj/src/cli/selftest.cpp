#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "hforge/cli/suite_runner.hpp"
#include "hforge/numfmt.hpp"
#include "hforge/quadrature.hpp"
#include "hforge/specialfn.hpp"

namespace hforge::cli {

namespace {

struct Checker {
  std::ostream& out;
  bool all = true;

  void line(bool ok, const std::string& name, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    all = all && ok;
  }

  void relative(const std::string& name, double got, double want, double tol) {
    const double rel = std::abs(got - want) / std::abs(want);
    line(rel <= tol, name, "got " + format_17(got) + " want " + format_17(want) + " rel " + format_shortest(rel));
  }

  void quad(const std::string& name, const QuadResult& r, double want, double tol) {
    const double err = std::abs(r.value - want);
    const bool ok = r.converged && err <= r.error_bound && r.error_bound <= tol;
    line(ok, name,
         "got " + format_17(r.value) + " want " + format_17(want) + " err " + format_shortest(err) + " bound " +
             format_shortest(r.error_bound));
  }
};

void check_guarded(Checker& c, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    c.line(false, name, std::string("threw: ") + e.what());
  }
}

}  // namespace

bool run_selftest(std::ostream& out) {
  Checker c{out};
  const double pi = std::numbers::pi;

  check_guarded(c, "gamma factorials", [&] {
    double fact = 1.0;
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) {
      if (k > 1) fact *= k - 1;
      worst = std::max(worst, std::abs(gamma(k) - fact) / fact);
    }
    c.line(worst <= 1e-12, "gamma factorials", "max rel " + format_shortest(worst));
  });
  check_guarded(c, "gamma reflection", [&] {
    double worst = 0.0;
    for (int i = 1; i <= 99; ++i) {
      const double x = i / 100.0;
      const double want = pi / std::sin(pi * x);
      worst = std::max(worst, std::abs(gamma(x) * gamma(1.0 - x) - want) / want);
    }
    c.line(worst <= 1e-10, "gamma reflection", "max rel " + format_shortest(worst));
  });
  check_guarded(c, "gamma(1/2)", [&] { c.relative("gamma(1/2)", gamma(0.5), std::sqrt(pi), 1e-13); });
  check_guarded(c, "log_gamma(10)", [&] { c.relative("log_gamma(10)", log_gamma(10.0), 12.801827480081469, 1e-13); });
  check_guarded(c, "classical constants", [&] {
    double worst = 0.0;
    for (double p : {1.25, 1.5, 2.0, 3.0, 4.0, 5.0}) {
      const HolderPair pair(p);
      const BoundConstants k = bound_constants(pair, KernelParams{1.0, 0.0, 0});
      const double want = pi / std::sin(pi / p);
      worst = std::max({worst, std::abs(k.c - want) / want, std::abs(k.c_prime - want) / want,
                        std::abs(hilbert_constant(pair) - want) / want});
    }
    c.line(worst <= 1e-10, "classical constants", "max rel " + format_shortest(worst));
  });

  const double tol = 1e-8;
  check_guarded(c, "int exp(-x)", [&] {
    c.quad("int exp(-x)", integrate_semi_infinite([](double x) { return std::exp(-x); }, tol), 1.0, tol);
  });
  check_guarded(c, "int x exp(-x)", [&] {
    c.quad("int x exp(-x)", integrate_semi_infinite([](double x) { return x * std::exp(-x); }, tol), 1.0, tol);
  });
  check_guarded(c, "int x^-1/2 exp(-x)", [&] {
    c.quad("int x^-1/2 exp(-x)", integrate_semi_infinite([](double x) { return std::exp(-x) / std::sqrt(x); }, tol),
           std::sqrt(pi), tol);
  });
  const TestFunction e0 = TestFunction::monomial_exponential(0.0, 1.0);
  const TestFunction e1 = TestFunction::monomial_exponential(1.0, 1.0);
  check_guarded(c, "kernel e^-x e^-y l=1", [&] {
    c.quad("kernel e^-x e^-y l=1", integrate_kernel_double(e0, e0, 1.0, tol), 1.0, tol);
  });
  check_guarded(c, "kernel xe^-x ye^-y l=1", [&] {
    c.quad("kernel xe^-x ye^-y l=1", integrate_kernel_double(e1, e1, 1.0, tol), 1.0 / 3.0, tol);
  });
  check_guarded(c, "kernel xe^-x ye^-y l=2", [&] {
    c.quad("kernel xe^-x ye^-y l=2", integrate_kernel_double(e1, e1, 2.0, tol), 1.0 / 6.0, tol);
  });
  out << (c.all ? "selftest passed" : "selftest FAILED") << '\n';
  return c.all;
}

}  // namespace hforge::cli
