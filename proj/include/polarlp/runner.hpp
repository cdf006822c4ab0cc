#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polarlp/certificate.hpp"
#include "polarlp/generator.hpp"
#include "polarlp/inequalities.hpp"

namespace polarlp {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Raised for anything wrong with a configuration; the CLI maps it to exit 64.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DiskSource {
  int count = 0;
  int n_min = 1;
  int n_max = 10;
  std::vector<double> k_values{1.0};
  double interior_margin = 1e-3;
};

struct LacunarySource {
  int n = 4;
  int mu = 2;
  int count = 0;
  std::vector<double> k_values{1.0};
  double interior_margin = 1e-3;
};

struct CatalogSource {
  std::vector<double> k_values;
  std::vector<int> n_values;
};

/// Parameter axes. Each checker takes the product of the axes it consumes.
struct Axes {
  /// Absolute |alpha| values.
  std::vector<double> alpha_magnitudes{1.0, 2.0, 5.0};
  /// |alpha| values as multiples of the checker's threshold (k or k^mu).
  std::vector<double> alpha_threshold_multiples{1.0, 1.5};
  int alpha_phases = 8;
  std::vector<cplx> betas{0.0, 1.0, -1.0, cplx{0.0, 1.0}, cplx{0.5, 0.5}};
  std::vector<double> p{0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 8.0};
  /// Holder exponent s; r = s / (s - 1).
  std::vector<double> holder_s{2.0, 64.0};
  /// Empty: each instance's own k.
  std::vector<double> k;
  /// Empty: each instance's own mu.
  std::vector<int> mu;
};

struct RunConfig {
  std::uint64_t seed = 42;
  /// 0 selects the number of available cores.
  unsigned threads = 0;
  std::optional<DiskSource> random_in_disk;
  std::vector<LacunarySource> lacunary;
  std::optional<CatalogSource> catalog;
  Axes axes;
  CheckOptions options;
  std::vector<CheckerId> checkers{kAllCheckers.begin(), kAllCheckers.end()};
};

/// Parses YAML text; throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Fully resolved configuration as YAML.
std::string echo_config(const RunConfig& cfg);

struct InstanceSet {
  std::vector<InstanceSpec> instances;  ///< sorted by id
  std::vector<std::string> notes;
};

/// Throws ConfigError on duplicate ids or invalid generator settings.
InstanceSet generate_instances(const RunConfig& cfg);

/// Certificates for one instance over the configured checkers and axes, in
/// report order.
std::vector<InequalityCertificate> check_instance(const InstanceSpec& instance, const RunConfig& cfg);

/// Report order within an instance: checker, then k, mu, p, r, s, alpha, beta.
bool report_less(const InequalityCertificate& a, const InequalityCertificate& b);

using InstanceSink = std::function<void(const InstanceSpec&, std::vector<InequalityCertificate>&&)>;

/// Runs check_instance over a worker pool. sink is called from one thread at
/// a time, in instance order, regardless of completion order.
void run_checks(const std::vector<InstanceSpec>& instances, const RunConfig& cfg, const InstanceSink& sink);

extern const char* const kCsvHeader;
void write_csv_row(std::ostream& out, const InstanceSpec& instance, const InequalityCertificate& c);

/// Verdict counts per checker.
struct Tally {
  std::map<std::string, std::map<std::string, std::size_t>> by_checker;
  std::size_t total = 0;
  void add(const InequalityCertificate& c);
  std::size_t count(Verdict v) const;
};

struct Timing {
  double generate_seconds = 0.0;
  double check_seconds = 0.0;
};

std::string summary_yaml(const RunConfig& cfg, const Tally& tally, const Timing& timing,
                         const std::vector<std::string>& notes, int exit_code);

/// Exit codes shared by every command.
enum ExitCode : int { kExitOk = 0, kExitViolation = 2, kExitIndeterminate = 3, kExitConfig = 64 };

int exit_code_for(const Tally& tally, bool strict);

/// The equality claims for the extremal instances: turan on z^n + 1,
/// malik_max on (z+k)^n, and ratio_mean / lacunary_ratio_mean on (z-k)^n with
/// real alpha > k. Returns the claim if the row is covered by one.
std::optional<std::string> equality_claim(const InstanceSpec& instance, const InequalityCertificate& c);

/// Config used by the sharpness command.
RunConfig sharpness_config(double k, const std::vector<int>& n_values);

}  // namespace polarlp
