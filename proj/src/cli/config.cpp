#include "hforge/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "hforge/errors.hpp"

namespace hforge::cli {

using nlohmann::json;

namespace {

const std::vector<std::string>& known_ids() {
  static const std::vector<std::string> v = {ids::kHilbertIntegral, ids::kHilbertDiscrete, ids::kOffsetDiscrete,
                                             ids::kWeightedC,       ids::kWeightedCPrime,  ids::kSumDiscrete,
                                             ids::kSumIntegral,     ids::kSuperadditivity};
  return v;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) {
    fail(where, "expected an object");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      fail(where, "unknown field '" + it.key() + "'");
    }
  }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) {
    fail(where, "missing field '" + key + "'");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    fail(where, "field '" + key + "' must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    fail(where, "field '" + key + "' must be finite");
  }
  return x;
}

double get_number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

std::int64_t get_integer(const json& obj, const std::string& key, const std::string& where) {
  const double x = get_number(obj, key, where);
  if (x != std::floor(x) || std::abs(x) > 9.0e15) {
    fail(where, "field '" + key + "' must be an integer");
  }
  return static_cast<std::int64_t>(x);
}

std::vector<double> get_number_list(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    fail(where, "field '" + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : obj.at(key)) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      fail(where, "field '" + key + "' must contain finite numbers only");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

TestFunction parse_function(const json& d, const std::string& where) {
  if (!d.is_object() || !d.contains("family") || !d.at("family").is_string()) {
    fail(where, "function descriptor needs a string 'family'");
  }
  const std::string fam = d.at("family").get<std::string>();
  try {
    if (fam == "monomial_exponential") {
      require_keys(d, {"family", "s", "b", "scale"}, where);
      return TestFunction::monomial_exponential(get_number(d, "s", where), get_number(d, "b", where),
                                                get_number_or(d, "scale", 1.0, where));
    }
    if (fam == "truncated_power") {
      require_keys(d, {"family", "exponent", "lower", "upper"}, where);
      return TestFunction::truncated_power(get_number(d, "exponent", where), get_number_or(d, "lower", 1.0, where),
                                           get_number(d, "upper", where));
    }
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
  fail(where, "unknown function family '" + fam + "'");
}

SequenceFamily parse_sequence(const json& d, int start, const std::string& where) {
  if (!d.is_object() || !d.contains("family") || !d.at("family").is_string()) {
    fail(where, "sequence descriptor needs a string 'family'");
  }
  const std::string fam = d.at("family").get<std::string>();
  try {
    if (fam == "power_decay") {
      require_keys(d, {"family", "alpha", "scale"}, where);
      return SequenceFamily(PowerDecay{get_number(d, "alpha", where), get_number_or(d, "scale", 1.0, where)}, start);
    }
    if (fam == "geometric") {
      require_keys(d, {"family", "r", "scale"}, where);
      return SequenceFamily(Geometric{get_number(d, "r", where), get_number_or(d, "scale", 1.0, where)}, start);
    }
    if (fam == "explicit") {
      require_keys(d, {"family", "values"}, where);
      return SequenceFamily(Explicit{get_number_list(d, "values", where)}, start);
    }
    if (fam == "truncated_power") {
      require_keys(d, {"family", "exponent", "cutoff"}, where);
      return SequenceFamily(TruncatedPowerSeq{get_number(d, "exponent", where), get_integer(d, "cutoff", where)},
                            start);
    }
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
  fail(where, "unknown sequence family '" + fam + "'");
}

HolderPair parse_pair(const json& inst, const std::string& where) {
  try {
    return HolderPair(get_number(inst, "p", where));
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
}

KernelParams parse_params(const json& inst, const std::string& where) {
  KernelParams k;
  k.lambda = get_number(inst, "lambda", where);
  k.gamma_shift = get_number_or(inst, "gamma", 0.0, where);
  const std::int64_t n = get_integer(inst, "n", where);
  if (!(k.lambda > 0.0)) {
    fail(where, "lambda must be positive");
  }
  if (n < 0 || n > 1000) {
    fail(where, "n must be an integer in [0, 1000]");
  }
  k.n = static_cast<int>(n);
  return k;
}

int parse_multiplicity(const json& inst, const std::string& key, const std::string& where) {
  const std::int64_t v = inst.contains(key) ? get_integer(inst, key, where) : 1;
  if (v < 1 || v > 1'000'000) {
    fail(where, key + " must be a positive integer");
  }
  return static_cast<int>(v);
}

void set_path(json& target, const std::string& dotted, const json& value) {
  json* node = &target;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t dot = dotted.find('.', pos);
    const std::string key = dotted.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (key.empty()) {
      throw ConfigError("grid key '" + dotted + "' has an empty component");
    }
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    if (!node->contains(key)) {
      (*node)[key] = json::object();
    }
    node = &(*node)[key];
    if (!node->is_object()) {
      throw ConfigError("grid key '" + dotted + "' descends into a non-object");
    }
    pos = dot + 1;
  }
}

// Portable uniform in [lo, hi) from the raw engine output.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<json> expand_random_superadditivity(const json& inst, const std::string& where) {
  const json& r = inst.at("random");
  require_keys(r, {"count", "size", "seed", "low", "high"}, where + ".random");
  const std::int64_t count = get_integer(r, "count", where);
  const std::int64_t size = get_integer(r, "size", where);
  const std::int64_t seed = get_integer(r, "seed", where);
  const double lo = get_number_or(r, "low", 0.01, where);
  const double hi = get_number_or(r, "high", 10.0, where);
  if (count < 1 || count > 1'000'000 || size < 1 || size > 1000 || !(lo > 0.0) || !(hi > lo)) {
    fail(where, "random needs count >= 1, 1 <= size <= 1000 and 0 < low < high");
  }
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::vector<json> out;
  for (std::int64_t c = 0; c < count; ++c) {
    json one = inst;
    one.erase("random");
    std::vector<double> a, b, alpha;
    double total = 0.0;
    for (std::int64_t i = 0; i < size; ++i) {
      a.push_back(uniform(rng, lo, hi));
      b.push_back(uniform(rng, lo, hi));
      alpha.push_back(uniform(rng, 0.05, 1.0));
      total += alpha.back();
    }
    // Normalize so the weights sum to 1 up to rounding; the last absorbs the residue.
    double acc = 0.0;
    for (std::int64_t i = 0; i + 1 < size; ++i) {
      alpha[i] /= total;
      acc += alpha[i];
    }
    alpha[size - 1] = 1.0 - acc;
    one["a"] = a;
    one["b"] = b;
    one["alpha"] = alpha;
    out.push_back(std::move(one));
  }
  return out;
}

Expectation parse_expect(const json& inst, const std::string& where) {
  if (!inst.contains("expect")) {
    return Expectation::Admissible;
  }
  const json& e = inst.at("expect");
  if (e == "admissible") return Expectation::Admissible;
  if (e == "inadmissible") return Expectation::Inadmissible;
  if (e == "any") return Expectation::Any;
  fail(where, "expect must be 'admissible', 'inadmissible' or 'any'");
}

ShiftConvention parse_convention(const json& inst, const std::string& where) {
  if (!inst.contains("convention")) {
    return ShiftConvention::Homogeneous;
  }
  const json& c = inst.at("convention");
  if (c == "homogeneous") return ShiftConvention::Homogeneous;
  if (c == "literal") return ShiftConvention::Literal;
  fail(where, "convention must be 'homogeneous' or 'literal'");
}

PreparedInstance prepare_one(const json& inst, const SuiteConfig& cfg, const std::string& where) {
  static const std::set<std::string> common = {"inequality", "expect", "label", "convention"};
  const std::string id = inst.at("inequality").get<std::string>();
  auto allowed = [&](std::initializer_list<const char*> extra) {
    std::set<std::string> s = common;
    for (const char* e : extra) s.insert(e);
    require_keys(inst, s, where);
  };

  PreparedInstance out;
  out.inequality_id = id;
  out.expect = parse_expect(inst, where);
  out.spec = inst;
  VerifyOptions opts;
  opts.caps = cfg.caps;
  opts.max_head = cfg.max_head;
  opts.convention = parse_convention(inst, where);

  if (id == ids::kHilbertIntegral) {
    allowed({"p", "f", "g"});
    opts.tol = cfg.quadrature_tol;
    const HolderPair pair = parse_pair(inst, where);
    const TestFunction f = parse_function(inst.value("f", json()), where + ".f");
    const TestFunction g = parse_function(inst.value("g", json()), where + ".g");
    out.run = [=] { return verify_hilbert_integral(f, g, pair, opts); };
  } else if (id == ids::kHilbertDiscrete || id == ids::kOffsetDiscrete) {
    const bool offset = id == ids::kOffsetDiscrete;
    const char* ka = offset ? "c" : "a";
    const char* kb = offset ? "d" : "b";
    allowed({"p", ka, kb});
    opts.tol = cfg.series_tol;
    const int start = offset ? 0 : 1;
    const HolderPair pair = parse_pair(inst, where);
    const SequenceFamily a = parse_sequence(inst.value(ka, json()), start, where + "." + ka);
    const SequenceFamily b = parse_sequence(inst.value(kb, json()), start, where + "." + kb);
    if (offset) {
      out.run = [=] { return verify_lemma_offset_discrete(a, b, pair, opts); };
    } else {
      out.run = [=] { return verify_hilbert_discrete(a, b, pair, opts); };
    }
  } else if (id == ids::kWeightedC || id == ids::kWeightedCPrime) {
    allowed({"p", "f", "g", "lambda", "gamma", "n"});
    opts.tol = cfg.quadrature_tol;
    const HolderPair pair = parse_pair(inst, where);
    const KernelParams params = parse_params(inst, where);
    const TestFunction f = parse_function(inst.value("f", json()), where + ".f");
    const TestFunction g = parse_function(inst.value("g", json()), where + ".g");
    const WeightVariant variant = id == ids::kWeightedC ? WeightVariant::C : WeightVariant::CPrime;
    out.run = [=] { return verify_weighted_integral(f, g, pair, params, variant, opts); };
  } else if (id == ids::kSumDiscrete) {
    allowed({"p", "a", "b", "c", "d", "k"});
    opts.tol = cfg.series_tol;
    const SumDiscreteInstance si{parse_sequence(inst.value("a", json()), 1, where + ".a"),
                                 parse_sequence(inst.value("b", json()), 1, where + ".b"),
                                 parse_sequence(inst.value("c", json()), 0, where + ".c"),
                                 parse_sequence(inst.value("d", json()), 0, where + ".d"),
                                 parse_pair(inst, where), parse_multiplicity(inst, "k", where)};
    out.run = [=] { return verify_sum_discrete(si, opts); };
  } else if (id == ids::kSumIntegral) {
    allowed({"p", "f", "g", "lambda", "gamma", "n", "m"});
    opts.tol = cfg.quadrature_tol;
    const SumIntegralInstance si{parse_function(inst.value("f", json()), where + ".f"),
                                 parse_function(inst.value("g", json()), where + ".g"), parse_pair(inst, where),
                                 parse_params(inst, where), parse_multiplicity(inst, "m", where)};
    out.run = [=] { return verify_sum_integral(si, opts); };
  } else if (id == ids::kSuperadditivity) {
    allowed({"a", "b", "alpha"});
    const std::vector<double> a = get_number_list(inst, "a", where);
    const std::vector<double> b = get_number_list(inst, "b", where);
    const std::vector<double> alpha = get_number_list(inst, "alpha", where);
    try {
      // Run once now so that bad vectors surface as config errors.
      (void)check_superadditivity(a, b, alpha);
    } catch (const DomainError& e) {
      fail(where, e.what());
    }
    out.run = [=] { return check_superadditivity(a, b, alpha); };
  }
  return out;
}

}  // namespace

bool is_known_inequality(const std::string& id) {
  const auto& v = known_ids();
  return std::find(v.begin(), v.end(), id) != v.end();
}

SuiteConfig parse_config(const json& doc) {
  require_keys(doc, {"version", "inequalities", "families", "tolerances", "caps", "output", "description"}, "config");
  SuiteConfig cfg;
  if (!doc.contains("version") || !doc.at("version").is_number_integer() || doc.at("version") != kConfigVersion) {
    fail("config", "version must be " + std::to_string(kConfigVersion));
  }
  if (!doc.contains("families") || !doc.at("families").is_array()) {
    fail("config", "'families' must be an array");
  }
  if (doc.contains("inequalities")) {
    if (!doc.at("inequalities").is_array()) {
      fail("config", "'inequalities' must be an array of identifiers");
    }
    for (const auto& id : doc.at("inequalities")) {
      if (!id.is_string() || !is_known_inequality(id.get<std::string>())) {
        fail("config.inequalities", "unknown inequality identifier " + id.dump());
      }
      cfg.inequalities.push_back(id.get<std::string>());
    }
  } else {
    cfg.inequalities = known_ids();
  }
  for (std::size_t i = 0; i < doc.at("families").size(); ++i) {
    const json& fam = doc.at("families")[i];
    const std::string where = "families[" + std::to_string(i) + "]";
    if (!fam.is_object() || !fam.contains("inequality") || !fam.at("inequality").is_string()) {
      fail(where, "needs a string 'inequality'");
    }
    if (!is_known_inequality(fam.at("inequality").get<std::string>())) {
      fail(where, "unknown inequality identifier " + fam.at("inequality").dump());
    }
    cfg.families.push_back(fam);
  }
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    require_keys(t, {"quadrature", "series"}, "config.tolerances");
    cfg.quadrature_tol = get_number_or(t, "quadrature", cfg.quadrature_tol, "config.tolerances");
    cfg.series_tol = get_number_or(t, "series", cfg.series_tol, "config.tolerances");
    if (!(cfg.quadrature_tol > 0.0) || !(cfg.series_tol > 0.0)) {
      fail("config.tolerances", "tolerances must be positive");
    }
  }
  if (doc.contains("caps")) {
    const json& c = doc.at("caps");
    require_keys(c, {"max_terms", "max_pairs", "max_evaluations", "max_head"}, "config.caps");
    auto cap = [&](const char* key, std::int64_t fallback) {
      const std::int64_t v = c.contains(key) ? get_integer(c, key, "config.caps") : fallback;
      if (v < 1) {
        fail("config.caps", std::string(key) + " must be positive");
      }
      return v;
    };
    cfg.caps.max_terms = cap("max_terms", cfg.caps.max_terms);
    cfg.caps.max_pairs = cap("max_pairs", cfg.caps.max_pairs);
    cfg.caps.max_evaluations = cap("max_evaluations", cfg.caps.max_evaluations);
    cfg.max_head = cap("max_head", cfg.max_head);
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    require_keys(o, {"format", "path"}, "config.output");
    if (o.contains("format")) {
      if (!o.at("format").is_string()) fail("config.output", "format must be a string");
      cfg.output.format = o.at("format").get<std::string>();
      if (cfg.output.format != "json" && cfg.output.format != "csv" && cfg.output.format != "text") {
        fail("config.output", "format must be json, csv or text");
      }
    }
    if (o.contains("path")) {
      if (!o.at("path").is_string()) fail("config.output", "path must be a string");
      cfg.output.path = o.at("path").get<std::string>();
    }
  }
  return cfg;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

std::vector<json> expand_family(const json& family) {
  json base = family;
  json grid = json::object();
  if (base.contains("grid")) {
    grid = base.at("grid");
    base.erase("grid");
    if (!grid.is_object()) {
      throw ConfigError("grid must be an object of value lists");
    }
  }
  std::vector<std::pair<std::string, json>> axes;
  for (auto it = grid.begin(); it != grid.end(); ++it) {
    if (!it.value().is_array() || it.value().empty()) {
      throw ConfigError("grid axis '" + it.key() + "' must be a nonempty array");
    }
    if (it.key() == "inequality") {
      throw ConfigError("grid may not vary 'inequality'");
    }
    axes.emplace_back(it.key(), it.value());
  }
  std::size_t total = 1;
  for (const auto& [key, values] : axes) {
    total *= values.size();
    if (total > 10'000'000) {
      throw ConfigError("grid expands to more than 1e7 instances");
    }
  }
  std::vector<json> out;
  out.reserve(total);
  std::vector<std::size_t> idx(axes.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    json inst = base;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      set_path(inst, axes[a].first, axes[a].second[idx[a]]);
    }
    out.push_back(std::move(inst));
    for (std::size_t a = axes.size(); a-- > 0;) {
      if (++idx[a] < axes[a].second.size()) break;
      idx[a] = 0;
    }
  }
  return out;
}

std::vector<PreparedInstance> prepare_instances(const SuiteConfig& config) {
  std::vector<PreparedInstance> out;
  for (std::size_t i = 0; i < config.families.size(); ++i) {
    const json& fam = config.families[i];
    const std::string id = fam.at("inequality").get<std::string>();
    if (std::find(config.inequalities.begin(), config.inequalities.end(), id) == config.inequalities.end()) {
      continue;
    }
    const std::string where = "families[" + std::to_string(i) + "]";
    std::vector<json> expanded;
    try {
      expanded = expand_family(fam);
    } catch (const ConfigError& e) {
      fail(where, e.what());
    }
    std::size_t j = 0;
    for (const json& inst : expanded) {
      const std::string w = where + "#" + std::to_string(j++);
      if (inst.contains("random")) {
        if (id != ids::kSuperadditivity) {
          fail(w, "'random' is only supported for " + std::string(ids::kSuperadditivity));
        }
        for (const json& r : expand_random_superadditivity(inst, w)) {
          out.push_back(prepare_one(r, config, w));
        }
      } else {
        out.push_back(prepare_one(inst, config, w));
      }
    }
  }
  return out;
}

}  // namespace hforge::cli
