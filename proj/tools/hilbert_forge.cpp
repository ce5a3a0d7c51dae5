#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hforge/cli/config.hpp"
#include "hforge/cli/report_io.hpp"
#include "hforge/cli/suite_runner.hpp"
#include "hforge/errors.hpp"
#include "hforge/kernels.hpp"
#include "hforge/numfmt.hpp"
#include "hforge/sharpness.hpp"
#include "hforge/specialfn.hpp"

using namespace hforge;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

unsigned default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write '" + path + "'");
  }
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ConstantsArgs {
  double p = 2.0;
  double lambda = 1.0;
  int n = 0;
  double gamma = 0.0;
  std::string format = "text";
};

int cmd_constants(const ConstantsArgs& a) {
  const HolderPair pair(a.p);
  const KernelParams params{a.lambda, a.gamma, a.n};
  if (a.n < 0) {
    throw DomainError("n must be a nonnegative integer");
  }
  const BoundConstants lit = bound_constants(pair, params, ShiftConvention::Literal);
  const BoundConstants hom = bound_constants(pair, params, ShiftConvention::Homogeneous);
  const double hilbert = hilbert_constant(pair);
  if (a.format == "json") {
    ordered_json doc;
    doc["p"] = pair.p();
    doc["q"] = pair.q();
    doc["lambda"] = a.lambda;
    doc["n"] = a.n;
    doc["gamma"] = a.gamma;
    doc["hilbert"] = hilbert;
    doc["C"] = lit.c;
    doc["C_prime"] = lit.c_prime;
    doc["C_prime_homogeneous"] = hom.c_prime;
    doc["gamma_args"] = lit.gamma_args;
    doc["gamma_args_homogeneous"] = hom.gamma_args;
    std::cout << cli::dump_json(doc);
  } else if (a.format == "csv") {
    std::cout << "p,q,hilbert,C,C_prime,C_prime_homogeneous\n"
              << format_17(pair.p()) << ',' << format_17(pair.q()) << ',' << format_17(hilbert) << ','
              << format_17(lit.c) << ',' << format_17(lit.c_prime) << ',' << format_17(hom.c_prime) << '\n';
  } else {
    auto row = [](const char* name, const std::string& v) { std::cout << std::left << std::setw(22) << name << v << '\n'; };
    row("p", format_17(pair.p()));
    row("q", format_17(pair.q()));
    row("pi/sin(pi/p)", format_17(hilbert));
    row("C", format_17(lit.c));
    row("C'", format_17(lit.c_prime));
    row("C' (homogeneous)", format_17(hom.c_prime));
    std::string args;
    for (std::size_t i = 0; i < 4; ++i) {
      args += (i ? ", " : "") + format_17(lit.gamma_args[i]);
    }
    row("Gamma arguments", args);
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string config;
  std::string format;
  std::string out;
  std::string compare;
  double tol = 0.0;
  double drift_tol = 1e-10;
  unsigned jobs = default_jobs();
};

int cmd_verify(const VerifyArgs& a) {
  cli::SuiteConfig cfg = cli::load_config(a.config);
  if (a.tol > 0.0) {
    cfg.quadrature_tol = a.tol;
    cfg.series_tol = a.tol;
  }
  const std::string format = a.format.empty() ? cfg.output.format : a.format;
  const std::string out_path = a.out.empty() ? cfg.output.path : a.out;
  const std::vector<cli::PreparedInstance> instances = cli::prepare_instances(cfg);

  const std::vector<cli::TimedReport> reports = cli::run_suite(instances, a.jobs);
  ordered_json meta;
  meta["generated_at"] = utc_timestamp();
  meta["tool"] = "hilbert-forge";
  meta["jobs"] = a.jobs;
  meta["simd"] = kernels::isa_name(kernels::active_isa());
  const std::string doc = cli::dump_json(cli::report_document(reports, meta));

  if (format == "json") {
    emit(out_path, doc);
  } else if (format == "csv") {
    std::ostringstream ss;
    cli::write_reports_csv(ss, reports);
    emit(out_path, ss.str());
  } else {
    std::ostringstream ss;
    cli::write_reports_text(ss, reports);
    emit(out_path, ss.str());
  }

  const cli::Tally t = cli::tally(reports);
  int code = (t.violated > 0 || t.unexpected > 0) ? kExitFailure : kExitOk;
  std::cerr << reports.size() << " instances, " << t.violated << " violated, " << t.unexpected
            << " with unexpected admissibility\n";
  if (!a.compare.empty()) {
    const cli::CompareOutcome cmp = cli::compare_reports(doc, read_file(a.compare), a.drift_tol);
    if (cmp.byte_identical) {
      std::cerr << "compare: byte-identical to baseline\n";
    } else if (cmp.within_tolerance) {
      std::cerr << "compare: not byte-identical, all fields within " << format_shortest(a.drift_tol) << '\n';
    } else {
      std::cerr << "compare: drift beyond " << format_shortest(a.drift_tol) << '\n';
      for (const auto& d : cmp.differences) {
        std::cerr << "  " << d << '\n';
      }
      code = kExitFailure;
    }
  }
  return code;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  const cli::SuiteConfig cfg = cli::load_config(config_path);
  const std::vector<cli::PreparedInstance> instances = cli::prepare_instances(cfg);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& inst : instances) {
    list.push_back(inst.spec);
  }
  ordered_json doc;
  doc["version"] = cli::kConfigVersion;
  doc["count"] = instances.size();
  doc["instances"] = ordered_json::parse(list.dump());
  emit(out_path, cli::dump_json(doc));
  return kExitOk;
}

struct SharpnessArgs {
  std::string mode = "integral";
  double p = 2.0;
  std::vector<double> points;
  double tol = 1e-10;
  unsigned jobs = default_jobs();
  std::string out;
};

int cmd_sharpness(const SharpnessArgs& a) {
  const HolderPair pair(a.p);
  if (a.points.empty()) {
    throw DomainError("sharpness: --points needs at least one probe");
  }
  const SharpnessMode mode = a.mode == "discrete" ? SharpnessMode::Discrete : SharpnessMode::Integral;
  std::vector<double> probes = a.points;
  std::sort(probes.begin(), probes.end());
  const std::vector<ProbeResult> results = sharpness_sweep(pair, mode, probes, a.tol, a.jobs);
  std::ostringstream ss;
  write_sharpness_csv(ss, results);
  emit(a.out, ss.str());
  if (!monotone_approach(results)) {
    std::cerr << "sharpness: ratios are not strictly increasing inside (0, 1)\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Hilbert-type inequalities"};
  app.require_subcommand(1);

  ConstantsArgs ca;
  CLI::App* constants = app.add_subcommand("constants", "Bound constants for (p, lambda, n, gamma)");
  constants->add_option("--p", ca.p, "Exponent p > 1")->required();
  constants->add_option("--lambda", ca.lambda, "Kernel exponent")->required();
  constants->add_option("--n", ca.n, "Derivative order")->required();
  constants->add_option("--gamma", ca.gamma, "Shift gamma");
  constants->add_option("--format", ca.format)->check(CLI::IsMember({"json", "csv", "text"}));

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("config", va.config, "Suite config (JSON)")->required();
  verify->add_option("--format", va.format)->check(CLI::IsMember({"json", "csv", "text"}));
  verify->add_option("--out", va.out, "Output path (default stdout)");
  verify->add_option("--tol", va.tol, "Override every stage tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--jobs", va.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  verify->add_option("--compare", va.compare, "Baseline report to compare against");
  verify->add_option("--drift-tol", va.drift_tol, "Allowed numeric drift for --compare")->check(CLI::NonNegativeNumber);

  std::string sweep_config;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand("sweep", "Expand the parameter grids of a config");
  sweep->add_option("config", sweep_config)->required();
  sweep->add_option("--out", sweep_out);

  SharpnessArgs sa;
  CLI::App* sharp = app.add_subcommand("sharpness", "Extremal-family ratios as CSV");
  sharp->add_option("--mode", sa.mode)->check(CLI::IsMember({"integral", "discrete"}));
  sharp->add_option("--p", sa.p);
  sharp->add_option("--points", sa.points, "Probe points (T or N)")->delimiter(',')->required();
  sharp->add_option("--tol", sa.tol)->check(CLI::PositiveNumber);
  sharp->add_option("--jobs", sa.jobs)->check(CLI::Range(1u, 1024u));
  sharp->add_option("--out", sa.out);
  sharp->add_option("--format", [](const CLI::results_t& r) { return r.size() == 1 && r[0] == "csv"; },
                    "Only csv is supported");

  CLI::App* selftest = app.add_subcommand("selftest", "Special-function and quadrature oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*constants) return cmd_constants(ca);
    if (*verify) return cmd_verify(va);
    if (*sweep) return cmd_sweep(sweep_config, sweep_out);
    if (*sharp) return cmd_sharpness(sa);
    if (*selftest) return cli::run_selftest(std::cout) ? kExitOk : kExitFailure;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
