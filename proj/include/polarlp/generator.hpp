#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "polarlp/instance.hpp"

namespace polarlp {

struct GeneratorConfig {
  std::uint64_t seed = 42;
  int n_min = 1;
  int n_max = 10;
  std::vector<double> k_values{1.0};
  /// Zeros are kept within k (1 - interior_margin).
  double interior_margin = 1e-3;
  int count = 10;
};

/// Throws std::invalid_argument on an unusable config.
void validate(const GeneratorConfig& cfg);

/// mt19937_64 with a fixed integer-to-double map, so streams agree across
/// standard libraries (std::uniform_real_distribution does not guarantee that).
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {lo, ..., hi}.
  int integer(int lo, int hi);
  /// Uniform by area in |z| <= radius.
  cplx in_disk(double radius);
  cplx unit_phase();

 private:
  std::mt19937_64 engine_;
};

/// cfg.count instances, zeros uniform in the disk; k cycles through k_values.
std::vector<InstanceSpec> random_in_disk(const GeneratorConfig& cfg);

/// cfg.count instances a_n z^rho prod_i (z^mu - c_i), rho = n mod mu,
/// |c_i| <= (k (1 - margin))^mu; k cycles through k_values.
std::vector<InstanceSpec> lacunary_family(int n, int mu, const GeneratorConfig& cfg);

/// Same construction with explicit c_i.
InstanceSpec lacunary_instance(std::string id, int n, int mu, const std::vector<cplx>& c, cplx leading, double k);

struct Catalog {
  std::vector<InstanceSpec> instances;
  std::vector<std::string> notes;
};

/// (z-k)^n, (z+k)^n, z^n and, for k = 1, z^n + 1.
Catalog extremal_catalog(double k, int n);

}  // namespace polarlp
