#include "polarlp/runner.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace polarlp {

namespace {

// ---------------------------------------------------------------------------
// number formatting

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fmt(std::optional<double> x) { return x ? fmt(*x) : std::string(); }

// ---------------------------------------------------------------------------
// config parsing

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

void require_map(const YAML::Node& node, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) fail(where, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      fail(where, "unknown key '" + key + "'");
    }
  }
}

template <class T>
T scalar(const YAML::Node& node, const std::string& where) {
  if (!node.IsScalar()) fail(where, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(where, "cannot read '" + node.Scalar() + "'");
  }
}

double finite(const YAML::Node& node, const std::string& where) {
  const double x = scalar<double>(node, where);
  if (!std::isfinite(x)) fail(where, "must be finite");
  return x;
}

template <class T>
std::vector<T> list(const YAML::Node& node, const std::string& where) {
  if (!node.IsSequence()) fail(where, "expected a list");
  if (node.size() == 0) fail(where, "empty axis");
  std::vector<T> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if constexpr (std::is_same_v<T, double>) {
      out.push_back(finite(node[i], w));
    } else {
      out.push_back(scalar<T>(node[i], w));
    }
  }
  return out;
}

std::vector<double> k_list(const YAML::Node& node, const std::string& where) {
  auto ks = list<double>(node, where);
  for (double k : ks) {
    if (!(k > 0.0) || k > 1.0) fail(where, "k values must lie in (0, 1]");
  }
  return ks;
}

double margin(const YAML::Node& node, const std::string& where) {
  const double m = finite(node, where);
  if (m < 0.0 || m >= 1.0) fail(where, "must lie in [0, 1)");
  return m;
}

int positive_count(const YAML::Node& node, const std::string& where) {
  const int c = scalar<int>(node, where);
  if (c < 0) fail(where, "must be >= 0");
  return c;
}

cplx parse_beta(const YAML::Node& node, const std::string& where) {
  cplx b;
  if (node.IsScalar()) {
    b = finite(node, where);
  } else if (node.IsSequence() && node.size() == 2) {
    b = {finite(node[0], where + "[0]"), finite(node[1], where + "[1]")};
  } else {
    fail(where, "beta must be a number or [re, im]");
  }
  if (std::abs(b) > 1.0 + 1e-12) fail(where, "|beta| must be <= 1");
  return b;
}

MinCircle parse_circle(const YAML::Node& node, const std::string& where) {
  const auto s = scalar<std::string>(node, where);
  if (s == "disk_radius") return MinCircle::disk_radius;
  if (s == "unit") return MinCircle::unit;
  fail(where, "expected 'disk_radius' or 'unit'");
}

void parse_generator(const YAML::Node& g, RunConfig& cfg) {
  require_map(g, "generator", {"random_in_disk", "lacunary_family", "extremal_catalog"});
  if (const auto d = g["random_in_disk"]) {
    const std::string w = "generator.random_in_disk";
    require_map(d, w, {"count", "n_range", "k_values", "interior_margin"});
    DiskSource src;
    if (d["count"]) src.count = positive_count(d["count"], w + ".count");
    if (d["n_range"]) {
      const auto r = list<int>(d["n_range"], w + ".n_range");
      if (r.size() != 2 || r[0] < 1 || r[1] < r[0]) fail(w + ".n_range", "expected [n_min, n_max] with 1 <= n_min <= n_max");
      src.n_min = r[0];
      src.n_max = r[1];
    }
    if (d["k_values"]) src.k_values = k_list(d["k_values"], w + ".k_values");
    if (d["interior_margin"]) src.interior_margin = margin(d["interior_margin"], w + ".interior_margin");
    cfg.random_in_disk = src;
  }
  if (const auto l = g["lacunary_family"]) {
    if (!l.IsSequence()) fail("generator.lacunary_family", "expected a list");
    for (std::size_t i = 0; i < l.size(); ++i) {
      const std::string w = "generator.lacunary_family[" + std::to_string(i) + "]";
      require_map(l[i], w, {"n", "mu", "count", "k_values", "interior_margin"});
      LacunarySource src;
      if (!l[i]["n"] || !l[i]["mu"]) fail(w, "n and mu are required");
      src.n = scalar<int>(l[i]["n"], w + ".n");
      src.mu = scalar<int>(l[i]["mu"], w + ".mu");
      if (src.mu < 1 || src.mu > src.n) fail(w, "need 1 <= mu <= n");
      if (l[i]["count"]) src.count = positive_count(l[i]["count"], w + ".count");
      if (l[i]["k_values"]) src.k_values = k_list(l[i]["k_values"], w + ".k_values");
      if (l[i]["interior_margin"]) src.interior_margin = margin(l[i]["interior_margin"], w + ".interior_margin");
      cfg.lacunary.push_back(src);
    }
  }
  if (const auto c = g["extremal_catalog"]) {
    const std::string w = "generator.extremal_catalog";
    require_map(c, w, {"k_values", "n_values"});
    if (!c["k_values"] || !c["n_values"]) fail(w, "k_values and n_values are required");
    CatalogSource src;
    src.k_values = k_list(c["k_values"], w + ".k_values");
    src.n_values = list<int>(c["n_values"], w + ".n_values");
    for (int n : src.n_values) {
      if (n < 1) fail(w + ".n_values", "n must be >= 1");
    }
    cfg.catalog = src;
  }
}

void parse_axes(const YAML::Node& a, Axes& axes) {
  require_map(a, "axes", {"alpha_magnitudes", "alpha_threshold_multiples", "alpha_phases", "beta", "p", "holder_s",
                          "k", "mu"});
  if (a["alpha_magnitudes"]) axes.alpha_magnitudes = list<double>(a["alpha_magnitudes"], "axes.alpha_magnitudes");
  if (a["alpha_threshold_multiples"]) {
    axes.alpha_threshold_multiples = list<double>(a["alpha_threshold_multiples"], "axes.alpha_threshold_multiples");
  }
  for (double x : axes.alpha_magnitudes) {
    if (x < 0.0) fail("axes.alpha_magnitudes", "must be >= 0");
  }
  for (double x : axes.alpha_threshold_multiples) {
    if (x < 0.0) fail("axes.alpha_threshold_multiples", "must be >= 0");
  }
  if (a["alpha_phases"]) {
    axes.alpha_phases = scalar<int>(a["alpha_phases"], "axes.alpha_phases");
    if (axes.alpha_phases < 1) fail("axes.alpha_phases", "must be >= 1");
  }
  if (a["beta"]) {
    const auto b = a["beta"];
    if (!b.IsSequence()) fail("axes.beta", "expected a list");
    if (b.size() == 0) fail("axes.beta", "empty axis");
    axes.betas.clear();
    for (std::size_t i = 0; i < b.size(); ++i) axes.betas.push_back(parse_beta(b[i], "axes.beta[" + std::to_string(i) + "]"));
  }
  if (a["p"]) {
    axes.p = list<double>(a["p"], "axes.p");
    for (double p : axes.p) {
      if (!(p > 0.0)) fail("axes.p", "p must be > 0");
    }
  }
  if (a["holder_s"]) {
    axes.holder_s = list<double>(a["holder_s"], "axes.holder_s");
    for (double s : axes.holder_s) {
      if (!(s > 1.0)) fail("axes.holder_s", "s must be > 1");
    }
  }
  if (a["k"]) axes.k = k_list(a["k"], "axes.k");
  if (a["mu"]) {
    axes.mu = list<int>(a["mu"], "axes.mu");
    for (int mu : axes.mu) {
      if (mu < 1) fail("axes.mu", "mu must be >= 1");
    }
  }
}

void parse_tolerances(const YAML::Node& t, CheckOptions& opt) {
  require_map(t, "tolerances", {"quadrature", "equality", "grid_size"});
  if (t["quadrature"]) {
    opt.quad_tol = finite(t["quadrature"], "tolerances.quadrature");
    if (!(opt.quad_tol > 0.0)) fail("tolerances.quadrature", "must be > 0");
  }
  if (t["equality"]) {
    opt.equality_tol = finite(t["equality"], "tolerances.equality");
    if (opt.equality_tol < 0.0) fail("tolerances.equality", "must be >= 0");
  }
  if (t["grid_size"]) {
    const int g = scalar<int>(t["grid_size"], "tolerances.grid_size");
    if (g < 0) fail("tolerances.grid_size", "must be >= 0");
    opt.grid_size = static_cast<std::size_t>(g);
  }
}

void parse_variants(const YAML::Node& v, CheckOptions& opt) {
  require_map(v, "variants", {"polar_min_circle", "reciprocal_min_circle", "aziz_shah_min_of"});
  if (v["polar_min_circle"]) opt.polar_min = parse_circle(v["polar_min_circle"], "variants.polar_min_circle");
  if (v["reciprocal_min_circle"]) {
    opt.reciprocal_min = parse_circle(v["reciprocal_min_circle"], "variants.reciprocal_min_circle");
  }
  if (v["aziz_shah_min_of"]) {
    const auto s = scalar<std::string>(v["aziz_shah_min_of"], "variants.aziz_shah_min_of");
    if (s == "modulus") {
      opt.aziz_shah_derivative_min = false;
    } else if (s == "derivative") {
      opt.aziz_shah_derivative_min = true;
    } else {
      fail("variants.aziz_shah_min_of", "expected 'modulus' or 'derivative'");
    }
  }
}

std::vector<CheckerId> parse_checkers(const YAML::Node& c) {
  if (c.IsScalar() && c.Scalar() == "all") return {kAllCheckers.begin(), kAllCheckers.end()};
  const auto names = list<std::string>(c, "checkers");
  std::set<CheckerId> seen;
  for (const auto& name : names) {
    const auto id = checker_from_string(name);
    if (!id) fail("checkers", "unknown checker '" + name + "'");
    seen.insert(*id);
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// config echo

YAML::Emitter& operator<<(YAML::Emitter& e, const std::vector<double>& xs) {
  e << YAML::Flow << YAML::BeginSeq;
  for (double x : xs) e << fmt(x);
  return e << YAML::EndSeq;
}

YAML::Emitter& operator<<(YAML::Emitter& e, const std::vector<int>& xs) {
  e << YAML::Flow << YAML::BeginSeq;
  for (int x : xs) e << x;
  return e << YAML::EndSeq;
}

void emit_config(YAML::Emitter& e, const RunConfig& cfg) {
  e << YAML::BeginMap;
  e << YAML::Key << "seed" << YAML::Value << cfg.seed;
  e << YAML::Key << "threads" << YAML::Value << cfg.threads;
  e << YAML::Key << "generator" << YAML::Value << YAML::BeginMap;
  if (cfg.random_in_disk) {
    const auto& d = *cfg.random_in_disk;
    e << YAML::Key << "random_in_disk" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "count" << YAML::Value << d.count;
    e << YAML::Key << "n_range" << YAML::Value << std::vector<int>{d.n_min, d.n_max};
    e << YAML::Key << "k_values" << YAML::Value << d.k_values;
    e << YAML::Key << "interior_margin" << YAML::Value << fmt(d.interior_margin);
    e << YAML::EndMap;
  }
  if (!cfg.lacunary.empty()) {
    e << YAML::Key << "lacunary_family" << YAML::Value << YAML::BeginSeq;
    for (const auto& l : cfg.lacunary) {
      e << YAML::BeginMap;
      e << YAML::Key << "n" << YAML::Value << l.n;
      e << YAML::Key << "mu" << YAML::Value << l.mu;
      e << YAML::Key << "count" << YAML::Value << l.count;
      e << YAML::Key << "k_values" << YAML::Value << l.k_values;
      e << YAML::Key << "interior_margin" << YAML::Value << fmt(l.interior_margin);
      e << YAML::EndMap;
    }
    e << YAML::EndSeq;
  }
  if (cfg.catalog) {
    e << YAML::Key << "extremal_catalog" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "k_values" << YAML::Value << cfg.catalog->k_values;
    e << YAML::Key << "n_values" << YAML::Value << cfg.catalog->n_values;
    e << YAML::EndMap;
  }
  e << YAML::EndMap;

  const Axes& a = cfg.axes;
  e << YAML::Key << "axes" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "alpha_magnitudes" << YAML::Value << a.alpha_magnitudes;
  e << YAML::Key << "alpha_threshold_multiples" << YAML::Value << a.alpha_threshold_multiples;
  e << YAML::Key << "alpha_phases" << YAML::Value << a.alpha_phases;
  e << YAML::Key << "beta" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const cplx& b : a.betas) e << YAML::Flow << YAML::BeginSeq << fmt(b.real()) << fmt(b.imag()) << YAML::EndSeq;
  e << YAML::EndSeq;
  e << YAML::Key << "p" << YAML::Value << a.p;
  e << YAML::Key << "holder_s" << YAML::Value << a.holder_s;
  if (!a.k.empty()) e << YAML::Key << "k" << YAML::Value << a.k;
  if (!a.mu.empty()) e << YAML::Key << "mu" << YAML::Value << a.mu;
  e << YAML::EndMap;

  const CheckOptions& o = cfg.options;
  e << YAML::Key << "tolerances" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "quadrature" << YAML::Value << fmt(o.quad_tol);
  e << YAML::Key << "equality" << YAML::Value << fmt(o.equality_tol);
  e << YAML::Key << "grid_size" << YAML::Value << o.grid_size;
  e << YAML::EndMap;
  e << YAML::Key << "variants" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "polar_min_circle" << YAML::Value << (o.polar_min == MinCircle::unit ? "unit" : "disk_radius");
  e << YAML::Key << "reciprocal_min_circle" << YAML::Value
    << (o.reciprocal_min == MinCircle::unit ? "unit" : "disk_radius");
  e << YAML::Key << "aziz_shah_min_of" << YAML::Value << (o.aziz_shah_derivative_min ? "derivative" : "modulus");
  e << YAML::EndMap;

  e << YAML::Key << "checkers" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (CheckerId id : cfg.checkers) e << std::string(to_string(id));
  e << YAML::EndSeq;
  e << YAML::EndMap;
}

// ---------------------------------------------------------------------------
// parameter grids

std::vector<cplx> alpha_grid(const Axes& axes, double threshold) {
  std::vector<double> mags = axes.alpha_magnitudes;
  for (double m : axes.alpha_threshold_multiples) mags.push_back(m * threshold);
  std::sort(mags.begin(), mags.end());
  mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
  std::vector<cplx> out;
  out.reserve(mags.size() * axes.alpha_phases);
  for (double r : mags) {
    for (int j = 0; j < axes.alpha_phases; ++j) {
      // phase 0 is exactly real so the alpha > 0 equality rows stay exact
      out.push_back(j == 0 ? cplx{r, 0.0} : std::polar(r, 2.0 * std::numbers::pi * j / axes.alpha_phases));
    }
  }
  return out;
}

using SortKey = std::tuple<int, double, double, double, double, double, double, double, double, double>;

SortKey sort_key(const InequalityCertificate& c) {
  constexpr double none = -std::numeric_limits<double>::infinity();
  const CertificateParams& p = c.params;
  return {static_cast<int>(c.id),
          p.k.value_or(none),
          p.mu ? static_cast<double>(*p.mu) : none,
          p.p.value_or(none),
          p.r.value_or(none),
          p.s.value_or(none),
          p.alpha ? p.alpha->real() : none,
          p.alpha ? p.alpha->imag() : none,
          p.beta ? p.beta->real() : none,
          p.beta ? p.beta->imag() : none};
}

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

}  // namespace

// ---------------------------------------------------------------------------

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config: expected a mapping at top level");
  require_map(root, "config", {"seed", "threads", "generator", "axes", "tolerances", "variants", "checkers"});
  RunConfig cfg;
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["threads"]) {
    const int t = scalar<int>(root["threads"], "threads");
    if (t < 0) fail("threads", "must be >= 0");
    cfg.threads = static_cast<unsigned>(t);
  }
  if (!root["generator"]) throw ConfigError("config: a generator section is required");
  parse_generator(root["generator"], cfg);
  if (root["axes"]) parse_axes(root["axes"], cfg.axes);
  if (root["tolerances"]) parse_tolerances(root["tolerances"], cfg.options);
  if (root["variants"]) parse_variants(root["variants"], cfg.options);
  if (root["checkers"]) cfg.checkers = parse_checkers(root["checkers"]);

  if (const std::string s = env_or_empty("SEED"); !s.empty()) {
    std::uint64_t seed = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw ConfigError("SEED: not an unsigned integer");
    cfg.seed = seed;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string echo_config(const RunConfig& cfg) {
  YAML::Emitter e;
  emit_config(e, cfg);
  return e.c_str();
}

InstanceSet generate_instances(const RunConfig& cfg) {
  InstanceSet set;
  try {
    if (cfg.random_in_disk && cfg.random_in_disk->count > 0) {
      GeneratorConfig g;
      g.seed = cfg.seed;
      g.n_min = cfg.random_in_disk->n_min;
      g.n_max = cfg.random_in_disk->n_max;
      g.k_values = cfg.random_in_disk->k_values;
      g.interior_margin = cfg.random_in_disk->interior_margin;
      g.count = cfg.random_in_disk->count;
      for (auto& s : random_in_disk(g)) set.instances.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < cfg.lacunary.size(); ++i) {
      const LacunarySource& l = cfg.lacunary[i];
      if (l.count == 0) continue;
      GeneratorConfig g;
      // each source gets its own stream
      g.seed = cfg.seed + 0x9E3779B97F4A7C15ull * (i + 1);
      g.k_values = l.k_values;
      g.interior_margin = l.interior_margin;
      g.count = l.count;
      for (auto& s : lacunary_family(l.n, l.mu, g)) {
        s.id += "-s" + std::to_string(i);
        set.instances.push_back(std::move(s));
      }
    }
    if (cfg.catalog) {
      for (double k : cfg.catalog->k_values) {
        for (int n : cfg.catalog->n_values) {
          Catalog c = extremal_catalog(k, n);
          for (auto& s : c.instances) set.instances.push_back(std::move(s));
          for (auto& note : c.notes) set.notes.push_back("k=" + fmt(k) + " n=" + std::to_string(n) + ": " + note);
        }
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("generator: ") + e.what());
  }
  std::sort(set.instances.begin(), set.instances.end(),
            [](const InstanceSpec& a, const InstanceSpec& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < set.instances.size(); ++i) {
    if (set.instances[i].id == set.instances[i - 1].id) {
      throw ConfigError("generator: duplicate instance id " + set.instances[i].id);
    }
  }
  return set;
}

bool report_less(const InequalityCertificate& a, const InequalityCertificate& b) { return sort_key(a) < sort_key(b); }

std::vector<InequalityCertificate> check_instance(const InstanceSpec& instance, const RunConfig& cfg) {
  const Subject s(instance);
  const Axes& ax = cfg.axes;
  const CheckOptions& opt = cfg.options;
  const std::vector<double> ks = ax.k.empty() ? std::vector<double>{instance.k} : ax.k;
  const std::vector<int> mus = ax.mu.empty() ? std::vector<int>{instance.mu} : ax.mu;

  std::vector<InequalityCertificate> out;
  auto add = [&](InequalityCertificate c) { out.push_back(std::move(c)); };

  for (CheckerId id : cfg.checkers) {
    switch (id) {
      case CheckerId::bernstein: add(check_bernstein(s, opt)); break;
      case CheckerId::turan: add(check_turan(s, opt)); break;
      case CheckerId::malik_max:
        for (double k : ks) add(check_malik_max(s, k, opt));
        break;
      case CheckerId::aziz_shah:
        for (double k : ks)
          for (int mu : mus) add(check_aziz_shah(s, k, mu, opt));
        break;
      case CheckerId::malik_lp:
        for (double p : ax.p) add(check_malik_lp(s, p, opt));
        break;
      case CheckerId::aziz_lp:
        for (double k : ks)
          for (double p : ax.p) add(check_aziz_lp(s, k, p, opt));
        break;
      case CheckerId::polar_max:
        for (double k : ks)
          for (cplx a : alpha_grid(ax, k)) add(check_polar_max(s, k, a, opt));
        break;
      case CheckerId::polar_lacunary_max:
      case CheckerId::polar_lacunary_min:
        for (double k : ks)
          for (int mu : mus)
            for (cplx a : alpha_grid(ax, std::pow(k, mu))) {
              add(id == CheckerId::polar_lacunary_max ? check_polar_lacunary_max(s, k, mu, a, opt)
                                                      : check_polar_lacunary_min(s, k, mu, a, opt));
            }
        break;
      case CheckerId::polar_lp:
        for (double k : ks)
          for (cplx a : alpha_grid(ax, k))
            for (double p : ax.p) add(check_polar_lp(s, k, a, p, opt));
        break;
      case CheckerId::polar_lacunary_lp:
        for (double k : ks)
          for (int mu : mus)
            for (cplx a : alpha_grid(ax, std::pow(k, mu)))
              for (double p : ax.p) add(check_polar_lacunary_lp(s, k, mu, a, p, opt));
        break;
      case CheckerId::ratio_mean:
      case CheckerId::shifted_polar_mean:
        for (double k : ks)
          for (cplx a : alpha_grid(ax, k))
            for (cplx b : ax.betas)
              for (double p : ax.p) {
                add(id == CheckerId::ratio_mean ? check_ratio_mean(s, k, a, b, p, opt)
                                                : check_shifted_polar_mean(s, k, a, b, p, opt));
              }
        break;
      case CheckerId::shifted_derivative_mean:
        for (double k : ks)
          for (cplx b : ax.betas)
            for (double p : ax.p) add(check_shifted_derivative_mean(s, k, b, p, opt));
        break;
      case CheckerId::lacunary_ratio_mean:
      case CheckerId::lacunary_shifted_mean:
        for (double k : ks)
          for (int mu : mus)
            for (cplx a : alpha_grid(ax, std::pow(k, mu)))
              for (cplx b : ax.betas)
                for (double p : ax.p) {
                  add(id == CheckerId::lacunary_ratio_mean ? check_lacunary_ratio_mean(s, k, mu, a, b, p, opt)
                                                           : check_lacunary_shifted_mean(s, k, mu, a, b, p, opt));
                }
        break;
      case CheckerId::holder_split:
        for (double k : ks)
          for (int mu : mus)
            for (cplx a : alpha_grid(ax, std::pow(k, mu)))
              for (cplx b : ax.betas)
                for (double p : ax.p)
                  for (double sx : ax.holder_s) add(check_holder_split(s, k, mu, a, b, p, sx / (sx - 1.0), sx, opt));
        break;
      case CheckerId::reciprocal_derivative:
        for (double k : ks)
          for (int mu : mus) add(check_reciprocal_derivative(s, k, mu, opt));
        break;
      case CheckerId::pointwise_chain:
        for (double k : ks)
          for (int mu : mus)
            for (cplx a : alpha_grid(ax, std::pow(k, mu)))
              for (cplx b : ax.betas) add(check_pointwise_chain(s, k, mu, a, b, opt));
        break;
    }
  }
  std::stable_sort(out.begin(), out.end(), report_less);
  return out;
}

void run_checks(const std::vector<InstanceSpec>& instances, const RunConfig& cfg, const InstanceSink& sink) {
  unsigned workers = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(instances.size(), 1));
  if (workers == 1) {
    for (const auto& instance : instances) sink(instance, check_instance(instance, cfg));
    return;
  }

  std::vector<std::optional<std::vector<InequalityCertificate>>> done(instances.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr error;

  auto work = [&] {
    while (!abort) {
      const std::size_t i = next++;
      if (i >= instances.size()) return;
      try {
        auto rows = check_instance(instances[i], cfg);
        std::lock_guard lock(mutex);
        done[i] = std::move(rows);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        abort = true;
      }
      ready.notify_all();
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);

  std::size_t emitted = 0;
  try {
    while (emitted < instances.size()) {
      std::vector<InequalityCertificate> rows;
      {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return done[emitted].has_value() || error; });
        if (error) break;
        rows = std::move(*done[emitted]);
        done[emitted].reset();
      }
      sink(instances[emitted], std::move(rows));
      ++emitted;
    }
  } catch (...) {
    abort = true;
    for (auto& t : pool) t.join();
    throw;
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

const char* const kCsvHeader =
    "instance_id,checker_id,n,k,mu,p,r,s,alpha_re,alpha_im,beta_re,beta_im,lhs,rhs,slack,rel_slack,error_budget,"
    "verdict";

void write_csv_row(std::ostream& out, const InstanceSpec& instance, const InequalityCertificate& c) {
  const CertificateParams& p = c.params;
  out << instance.id << ',' << to_string(c.id) << ',' << instance.degree() << ',' << fmt(p.k) << ','
      << (p.mu ? std::to_string(*p.mu) : std::string()) << ',' << fmt(p.p) << ',' << fmt(p.r) << ',' << fmt(p.s)
      << ',' << (p.alpha ? fmt(p.alpha->real()) : "") << ',' << (p.alpha ? fmt(p.alpha->imag()) : "") << ','
      << (p.beta ? fmt(p.beta->real()) : "") << ',' << (p.beta ? fmt(p.beta->imag()) : "") << ',' << fmt(c.lhs)
      << ',' << fmt(c.rhs) << ',' << fmt(c.slack) << ',' << fmt(c.rel_slack) << ',' << fmt(c.error_budget) << ','
      << to_string(c.verdict) << '\n';
}

void Tally::add(const InequalityCertificate& c) {
  ++by_checker[std::string(to_string(c.id))][std::string(to_string(c.verdict))];
  ++total;
}

std::size_t Tally::count(Verdict v) const {
  std::size_t n = 0;
  const std::string name(to_string(v));
  for (const auto& [checker, counts] : by_checker) {
    if (auto it = counts.find(name); it != counts.end()) n += it->second;
  }
  return n;
}

std::string summary_yaml(const RunConfig& cfg, const Tally& tally, const Timing& timing,
                         const std::vector<std::string>& notes, int exit_code) {
  constexpr std::array verdicts{Verdict::holds,     Verdict::equality,      Verdict::violated_within_error,
                                Verdict::violated,  Verdict::indeterminate, Verdict::rejected};
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "artifact_version" << YAML::Value << kArtifactVersion;
  e << YAML::Key << "config" << YAML::Value;
  emit_config(e, cfg);
  e << YAML::Key << "summary" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "certificates" << YAML::Value << tally.total;
  e << YAML::Key << "by_verdict" << YAML::Value << YAML::BeginMap;
  for (Verdict v : verdicts) e << YAML::Key << std::string(to_string(v)) << YAML::Value << tally.count(v);
  e << YAML::EndMap;
  e << YAML::Key << "by_checker" << YAML::Value << YAML::BeginMap;
  for (const auto& [checker, counts] : tally.by_checker) {
    e << YAML::Key << checker << YAML::Value << YAML::Flow << YAML::BeginMap;
    for (Verdict v : verdicts) {
      const auto it = counts.find(std::string(to_string(v)));
      if (it != counts.end()) e << YAML::Key << std::string(to_string(v)) << YAML::Value << it->second;
    }
    e << YAML::EndMap;
  }
  e << YAML::EndMap;
  e << YAML::EndMap;
  if (!notes.empty()) {
    e << YAML::Key << "notes" << YAML::Value << YAML::BeginSeq;
    for (const auto& n : notes) e << n;
    e << YAML::EndSeq;
  }
  e << YAML::Key << "exit_code" << YAML::Value << exit_code;
  e << YAML::Key << "timing" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "generate_seconds" << YAML::Value << fmt(timing.generate_seconds);
  e << YAML::Key << "check_seconds" << YAML::Value << fmt(timing.check_seconds);
  e << YAML::EndMap;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

int exit_code_for(const Tally& tally, bool strict) {
  if (tally.count(Verdict::violated) > 0) return kExitViolation;
  if (strict && tally.count(Verdict::indeterminate) > 0) return kExitIndeterminate;
  return kExitOk;
}

std::optional<std::string> equality_claim(const InstanceSpec& instance, const InequalityCertificate& c) {
  const auto starts = [&](std::string_view prefix) { return instance.id.rfind(prefix, 0) == 0; };
  if (c.verdict == Verdict::rejected) return std::nullopt;
  if (c.id == CheckerId::turan && starts("z^n+1/")) return "turan equality for z^n + 1";
  if (c.id == CheckerId::malik_max && starts("(z+k)^n/") && c.params.k == instance.k) {
    return "malik_max equality for (z + k)^n";
  }
  if ((c.id == CheckerId::ratio_mean || c.id == CheckerId::lacunary_ratio_mean) && starts("(z-k)^n/") &&
      c.params.k == instance.k && c.params.mu.value_or(1) == 1 && c.params.alpha && c.params.alpha->imag() == 0.0 &&
      c.params.alpha->real() > instance.k) {
    return "ratio-form equality for (z - k)^n, alpha > k real";
  }
  return std::nullopt;
}

RunConfig sharpness_config(double k, const std::vector<int>& n_values) {
  RunConfig cfg;
  cfg.catalog = CatalogSource{{k}, n_values};
  cfg.axes.alpha_magnitudes = {1.0, 1.0 + k};
  cfg.axes.alpha_threshold_multiples = {1.0, 2.0};
  cfg.axes.alpha_phases = 1;
  cfg.axes.betas = {0.0, 1.0, cplx{0.0, 1.0}};
  cfg.axes.p = {0.5, 1.0, 2.0, 4.0};
  cfg.axes.holder_s = {64.0};
  return cfg;
}

}  // namespace polarlp
