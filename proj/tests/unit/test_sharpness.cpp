#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hforge/errors.hpp"
#include "hforge/sharpness.hpp"

using namespace hforge;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("integral probes against independent quadrature") {
  // 30-digit values of the truncated double integral.
  struct Case {
    double p, T, lhs;
  };
  for (const Case& c : {Case{2.0, 10.0, 2.40873588029063606879744389115},
                        Case{3.0, 100.0, 8.20017952718360264042919548611},
                        Case{1.5, 1000.0, 15.433421862268018602717574444}}) {
    const HolderPair pair(c.p);
    const ProbeResult r = extremal_ratio_integral(pair, c.T);
    CHECK(std::abs(r.lhs - c.lhs) <= r.lhs_error + 1e-12 * c.lhs);
    CHECK(r.rhs == doctest::Approx(hilbert_constant(pair) * std::log(c.T)).epsilon(1e-12));
  }
}

TEST_CASE("discrete probes against direct sums") {
  const ProbeResult two = extremal_ratio_discrete(HolderPair(2.0), 2);
  CHECK(two.lhs == doctest::Approx(1.0964045207910316829).epsilon(1e-14));
  CHECK(two.rhs == doctest::Approx(1.5 * std::numbers::pi).epsilon(1e-14));
  CHECK(std::abs(two.ratio - 0.2327) <= 1e-3);
  CHECK(two.ratio == doctest::Approx(0.232664265482924565313).epsilon(1e-13));
  const ProbeResult five = extremal_ratio_discrete(HolderPair(3.0), 5);
  CHECK(five.ratio == doctest::Approx(0.293433513461866762415).epsilon(1e-13));
}

TEST_CASE("integral ratios approach one at a logarithmic rate") {
  const std::vector<double> probes = {1e1, 1e2, 1e3, 1e4};
  const std::vector<ProbeResult> rs = sharpness_sweep(HolderPair(2.0), SharpnessMode::Integral, probes);
  CHECK(monotone_approach(rs));
  for (const ProbeResult& r : rs) {
    CHECK(r.ratio > 0.0);
    CHECK(r.ratio < 1.0);
    CHECK(ratio_error(r) < 1e-9);
  }
  for (std::size_t i = 1; i < rs.size(); ++i) {
    const double rate = (1.0 - rs[i].ratio) * std::log(rs[i].probe);
    CHECK(rate >= 2.0);
    CHECK(rate <= 2.4);
  }
}

TEST_CASE("the integral constant cannot be lowered by ten percent") {
  const ProbeResult r = extremal_ratio_integral(HolderPair(2.0), 1e12);
  CHECK(r.ratio - ratio_error(r) > 0.9);
  CHECK(r.ratio < 1.0);
}

TEST_CASE("discrete ratios increase") {
  const std::vector<double> probes = {2, 10, 100, 1000, 10000};
  for (double p : {1.5, 2.0, 4.0}) {
    const std::vector<ProbeResult> rs = sharpness_sweep(HolderPair(p), SharpnessMode::Discrete, probes);
    CHECK(monotone_approach(rs));
  }
}

TEST_CASE("relabeling p and q gives the same discrete ratio") {
  const ProbeResult a = extremal_ratio_discrete(HolderPair(3.0), 10000);
  const ProbeResult b = extremal_ratio_discrete(HolderPair(1.5), 10000);
  CHECK(std::abs(a.ratio - b.ratio) <= 1e-9);
}

TEST_CASE("sweep is independent of the job count") {
  const std::vector<double> probes = {1.1, 10, 100, 1e3, 1e4};
  const auto one = sharpness_sweep(HolderPair(2.0), SharpnessMode::Integral, probes, 1e-10, 1);
  const auto three = sharpness_sweep(HolderPair(2.0), SharpnessMode::Integral, probes, 1e-10, 3);
  REQUIRE(one.size() == three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].ratio == three[i].ratio);
    CHECK(one[i].lhs_error == three[i].lhs_error);
  }
}

TEST_CASE("csv output matches the pinned baselines") {
  const std::vector<double> ti = {1.1, 10, 100, 1e3, 1e4};
  std::ostringstream integral;
  write_sharpness_csv(integral, sharpness_sweep(HolderPair(2.0), SharpnessMode::Integral, ti));
  CHECK(integral.str() == slurp(std::string(HFORGE_FIXTURE_DIR) + "/sharpness_integral_p2.csv"));
  const std::vector<double> nd = {2, 10, 100, 1000};
  std::ostringstream discrete;
  write_sharpness_csv(discrete, sharpness_sweep(HolderPair(2.0), SharpnessMode::Discrete, nd));
  CHECK(discrete.str() == slurp(std::string(HFORGE_FIXTURE_DIR) + "/sharpness_discrete_p2.csv"));
}

TEST_CASE("probe validation") {
  CHECK_THROWS_AS(extremal_ratio_integral(HolderPair(2.0), 1.0), DomainError);
  CHECK_THROWS_AS(extremal_ratio_discrete(HolderPair(2.0), 1), DomainError);
  const std::vector<double> bad = {10, 2.5};
  CHECK_THROWS_AS(sharpness_sweep(HolderPair(2.0), SharpnessMode::Discrete, bad), DomainError);
  const std::vector<ProbeResult> falling = {{10, 1, 0, 2, 0, 0.5}, {100, 1, 0, 4, 0, 0.25}};
  CHECK_FALSE(monotone_approach(falling));
  const std::vector<ProbeResult> above = {{10, 3, 0, 2, 0, 1.5}};
  CHECK_FALSE(monotone_approach(above));
}
