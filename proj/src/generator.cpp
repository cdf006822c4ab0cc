#include "polarlp/generator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polarlp/roots.hpp"

namespace polarlp {

namespace {

std::string make_id(std::string_view prefix, std::uint64_t seed, int index) {
  std::ostringstream os;
  os << prefix << '-' << seed << '-';
  os.width(4);
  os.fill('0');
  os << index;
  return os.str();
}

void revalidate(const InstanceSpec& s) {
  if (auto err = validation_error(s)) throw std::logic_error("generator emitted invalid instance " + s.id + ": " + *err);
  const ZeroModulus zm = max_zero_modulus(s.poly);
  if (!zm.ok || zm.value > s.k * (1.0 + 1e-8)) {
    throw std::logic_error("generator emitted instance " + s.id + " with zeros outside the disk");
  }
}

}  // namespace

void validate(const GeneratorConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw std::invalid_argument("n range must satisfy 1 <= n_min <= n_max");
  if (cfg.k_values.empty()) throw std::invalid_argument("k_values is empty");
  for (double k : cfg.k_values) {
    if (!(k > 0.0) || k > 1.0) throw std::invalid_argument("k values must lie in (0, 1]");
  }
  if (!(cfg.interior_margin >= 0.0) || cfg.interior_margin >= 1.0) {
    throw std::invalid_argument("interior_margin must lie in [0, 1)");
  }
  if (cfg.count < 0) throw std::invalid_argument("count must be >= 0");
}

int PortableRng::integer(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(static_cast<std::uint64_t>(uniform() * static_cast<double>(span)) % span);
}

cplx PortableRng::in_disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  return std::polar(r, 2.0 * std::numbers::pi * uniform());
}

cplx PortableRng::unit_phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

std::vector<InstanceSpec> random_in_disk(const GeneratorConfig& cfg) {
  validate(cfg);
  PortableRng rng(cfg.seed);
  std::vector<InstanceSpec> out;
  out.reserve(cfg.count);
  for (int i = 0; i < cfg.count; ++i) {
    const double k = cfg.k_values[i % cfg.k_values.size()];
    const int n = rng.integer(cfg.n_min, cfg.n_max);
    const double radius = k * (1.0 - cfg.interior_margin);
    std::vector<cplx> zeros(n);
    for (cplx& z : zeros) z = rng.in_disk(radius);
    const cplx leading = rng.uniform(0.5, 2.0) * rng.unit_phase();
    InstanceSpec s;
    s.id = make_id("disk", cfg.seed, i);
    s.poly = from_zeros(zeros, leading);
    s.zeros = std::move(zeros);
    s.leading = leading;
    s.k = k;
    s.mu = lacunary_gap(s.poly);
    revalidate(s);
    out.push_back(std::move(s));
  }
  return out;
}

InstanceSpec lacunary_instance(std::string id, int n, int mu, const std::vector<cplx>& c, cplx leading, double k) {
  if (mu < 1 || mu > n) throw std::invalid_argument("lacunary_instance: need 1 <= mu <= n");
  const int rho = n % mu;
  if (static_cast<int>(c.size()) != n / mu) throw std::invalid_argument("lacunary_instance: need n / mu factors");

  // coefficients in the variable z^mu, then spread out
  std::vector<cplx> inner{leading};
  for (const cplx& ci : c) {
    std::vector<cplx> next(inner.size() + 1);
    for (std::size_t j = 0; j < inner.size(); ++j) {
      next[j] -= ci * inner[j];
      next[j + 1] += inner[j];
    }
    inner = std::move(next);
  }
  // inner is ascending in w = z^mu
  std::vector<cplx> coeffs(n + 1);
  for (std::size_t j = 0; j < inner.size(); ++j) coeffs[rho + mu * j] = inner[j];

  std::vector<cplx> zeros(rho, cplx{});
  for (const cplx& ci : c) {
    const double r = std::pow(std::abs(ci), 1.0 / mu);
    const double phase = std::arg(ci);
    for (int j = 0; j < mu; ++j) zeros.push_back(std::polar(r, (phase + 2.0 * std::numbers::pi * j) / mu));
  }

  InstanceSpec s;
  s.id = std::move(id);
  s.poly = ComplexPoly(std::move(coeffs));
  s.zeros = std::move(zeros);
  s.leading = leading;
  s.k = k;
  s.mu = mu;
  revalidate(s);
  return s;
}

std::vector<InstanceSpec> lacunary_family(int n, int mu, const GeneratorConfig& cfg) {
  validate(cfg);
  if (mu < 1 || mu > n) throw std::invalid_argument("lacunary_family: need 1 <= mu <= n");
  PortableRng rng(cfg.seed);
  std::vector<InstanceSpec> out;
  out.reserve(cfg.count);
  for (int i = 0; i < cfg.count; ++i) {
    const double k = cfg.k_values[i % cfg.k_values.size()];
    const double bound = std::pow(k * (1.0 - cfg.interior_margin), mu);
    std::vector<cplx> c(n / mu);
    for (cplx& ci : c) ci = rng.in_disk(bound);
    const cplx leading = rng.uniform(0.5, 2.0) * rng.unit_phase();
    std::ostringstream prefix;
    prefix << "lac" << n << 'x' << mu;
    out.push_back(lacunary_instance(make_id(prefix.str(), cfg.seed, i), n, mu, c, leading, k));
  }
  return out;
}

Catalog extremal_catalog(double k, int n) {
  if (!(k > 0.0) || k > 1.0) throw std::invalid_argument("extremal_catalog: k must lie in (0, 1]");
  if (n < 1) throw std::invalid_argument("extremal_catalog: n must be >= 1");
  Catalog out;
  std::ostringstream tag;
  tag << "k" << k << "-n" << n;
  out.instances.push_back(make_instance("(z-k)^n/" + tag.str(), std::vector<cplx>(n, cplx{k, 0.0}), 1.0, k));
  out.instances.push_back(make_instance("(z+k)^n/" + tag.str(), std::vector<cplx>(n, cplx{-k, 0.0}), 1.0, k));
  out.instances.push_back(make_instance("z^n/" + tag.str(), std::vector<cplx>(n, cplx{}), 1.0, k, n));
  if (k == 1.0) {
    std::vector<cplx> zeros(n);
    for (int j = 0; j < n; ++j) zeros[j] = std::polar(1.0, std::numbers::pi * (2.0 * j + 1.0) / n);
    InstanceSpec s;
    s.id = "z^n+1/" + tag.str();
    std::vector<cplx> coeffs(n + 1);
    coeffs[0] = 1.0;
    coeffs[n] = 1.0;
    s.poly = ComplexPoly(std::move(coeffs));
    s.zeros = std::move(zeros);
    s.leading = 1.0;
    s.k = 1.0;
    s.mu = n;
    if (auto err = validation_error(s)) throw std::logic_error("extremal_catalog: " + *err);
    out.instances.push_back(std::move(s));
  } else {
    out.notes.push_back("z^n + 1 omitted: its zeros lie on |z| = 1 > k");
  }
  return out;
}

}  // namespace polarlp
