// polarlp: verify, sweep and sharpness runs over generated instances.

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "polarlp/runner.hpp"

namespace fs = std::filesystem;
using namespace polarlp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

fs::path resolve_out(const std::string& path) {
  fs::path p(path);
  const char* dir = std::getenv("OUT_DIR");
  if (dir && *dir && p.is_relative()) p = fs::path(dir) / p;
  return p;
}

fs::path summary_path(const fs::path& csv) {
  fs::path s = csv;
  if (s.extension() == ".csv") s.replace_extension();
  s += ".summary.yaml";
  return s;
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

struct Outcome {
  Tally tally;
  std::vector<std::string> claim_failures;
  std::size_t claims_checked = 0;
};

// Runs the checks, streaming rows to the CSV; returns the tallies.
Outcome run(const RunConfig& cfg, const InstanceSet& set, const fs::path& csv_path, bool check_claims) {
  std::ofstream csv = open_out(csv_path);
  csv << kCsvHeader << '\n';
  Outcome outcome;
  run_checks(set.instances, cfg, [&](const InstanceSpec& inst, std::vector<InequalityCertificate>&& rows) {
    for (const auto& c : rows) {
      write_csv_row(csv, inst, c);
      outcome.tally.add(c);
      if (!check_claims) continue;
      if (auto claim = equality_claim(inst, c)) {
        ++outcome.claims_checked;
        if (c.verdict != Verdict::equality) {
          outcome.claim_failures.push_back(inst.id + " " + std::string(to_string(c.id)) + ": " + *claim + " but " +
                                           std::string(to_string(c.verdict)));
        }
      }
    }
  });
  if (!csv) throw std::runtime_error("write failed for " + csv_path.string());
  return outcome;
}

int finish(const RunConfig& cfg, const Outcome& outcome, const Timing& timing, std::vector<std::string> notes,
           int code, const fs::path& csv_path) {
  for (const auto& f : outcome.claim_failures) notes.push_back("claim failed: " + f);
  std::ofstream summary = open_out(summary_path(csv_path));
  summary << summary_yaml(cfg, outcome.tally, timing, notes, code);
  std::cerr << outcome.tally.total << " certificates: " << outcome.tally.count(Verdict::holds) << " holds, "
            << outcome.tally.count(Verdict::equality) << " equality, " << outcome.tally.count(Verdict::violated)
            << " violated, " << outcome.tally.count(Verdict::violated_within_error) << " violated_within_error, "
            << outcome.tally.count(Verdict::indeterminate) << " indeterminate, "
            << outcome.tally.count(Verdict::rejected) << " rejected\n";
  for (const auto& f : outcome.claim_failures) std::cerr << "claim failed: " << f << '\n';
  std::cerr << "report: " << csv_path.string() << "\nsummary: " << summary_path(csv_path).string() << '\n';
  return code;
}

int cmd_run(const std::string& config_path, const std::string& out, bool strict) {
  const RunConfig cfg = load_config(config_path);
  const auto t0 = Clock::now();
  const InstanceSet set = generate_instances(cfg);
  Timing timing;
  timing.generate_seconds = seconds_since(t0);
  const auto t1 = Clock::now();
  const fs::path csv_path = resolve_out(out);
  const Outcome outcome = run(cfg, set, csv_path, false);
  timing.check_seconds = seconds_since(t1);
  return finish(cfg, outcome, timing, set.notes, exit_code_for(outcome.tally, strict), csv_path);
}

int cmd_sharpness(double k, const std::vector<int>& n_values, const std::string& out) {
  if (!(k > 0.0) || k > 1.0) throw ConfigError("--k must lie in (0, 1]");
  for (int n : n_values) {
    if (n < 1) throw ConfigError("--n must be >= 1");
  }
  RunConfig cfg = sharpness_config(k, n_values);
  if (const char* seed = std::getenv("SEED"); seed && *seed) {
    const std::string_view s(seed);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), cfg.seed);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw ConfigError("SEED: not an unsigned integer");
  }
  const auto t0 = Clock::now();
  const InstanceSet set = generate_instances(cfg);
  Timing timing;
  timing.generate_seconds = seconds_since(t0);
  const auto t1 = Clock::now();
  const fs::path csv_path = resolve_out(out);
  const Outcome outcome = run(cfg, set, csv_path, true);
  timing.check_seconds = seconds_since(t1);
  int code = exit_code_for(outcome.tally, false);
  if (!outcome.claim_failures.empty() || outcome.tally.count(Verdict::violated_within_error) > 0) {
    code = kExitViolation;
  }
  std::vector<std::string> notes = set.notes;
  notes.push_back("equality claims checked: " + std::to_string(outcome.claims_checked));
  return finish(cfg, outcome, timing, notes, code, csv_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical certificates for L_p polar-derivative inequalities"};
  app.require_subcommand(1);

  std::string config, out = "verify.csv";
  bool strict = false;
  auto* verify = app.add_subcommand("verify", "run every checker over the configured instances");
  verify->add_option("config", config, "YAML config")->required();
  verify->add_option("--out", out, "CSV report path; the summary goes next to it");
  verify->add_flag("--strict", strict, "exit 3 on any indeterminate certificate");

  std::string sweep_config, sweep_out;
  bool sweep_strict = false;
  auto* sweep = app.add_subcommand("sweep", "Cartesian product of the configured axes");
  sweep->add_option("config", sweep_config, "YAML config")->required();
  sweep->add_option("--out", sweep_out, "CSV report path")->required();
  sweep->add_flag("--strict", sweep_strict, "exit 3 on any indeterminate certificate");

  double k = 0.5;
  std::vector<int> n_values;
  std::string sharp_out;
  auto* sharp = app.add_subcommand("sharpness", "check equality on the extremal polynomials");
  sharp->add_option("--k", k, "disk radius in (0, 1]")->required();
  sharp->add_option("--n", n_values, "degree(s)")->required();
  sharp->add_option("--out", sharp_out, "CSV report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*verify) return cmd_run(config, out, strict);
    if (*sweep) return cmd_run(sweep_config, sweep_out, sweep_strict);
    return cmd_sharpness(k, n_values, sharp_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
