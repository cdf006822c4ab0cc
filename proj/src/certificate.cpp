#include "polarlp/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polarlp {

namespace {

constexpr std::array<std::string_view, kAllCheckers.size()> kCheckerNames = {
    "bernstein",           "turan",
    "malik_max",           "aziz_shah",
    "malik_lp",            "aziz_lp",
    "polar_max",           "polar_lacunary_max",
    "polar_lacunary_min",  "polar_lp",
    "polar_lacunary_lp",   "ratio_mean",
    "shifted_polar_mean",  "shifted_derivative_mean",
    "lacunary_ratio_mean", "lacunary_shifted_mean",
    "holder_split",        "reciprocal_derivative",
    "pointwise_chain",
};

}  // namespace

std::string_view to_string(CheckerId id) { return kCheckerNames[static_cast<std::size_t>(id)]; }

std::optional<CheckerId> checker_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kCheckerNames.size(); ++i) {
    if (kCheckerNames[i] == name) return static_cast<CheckerId>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality: return "equality";
    case Verdict::violated_within_error: return "violated_within_error";
    case Verdict::violated: return "violated";
    case Verdict::indeterminate: return "indeterminate";
    case Verdict::rejected: return "rejected";
  }
  return "unknown";
}

InequalityCertificate certify(CheckerId id, double lhs, double rhs, double error_budget, CertificateParams params,
                              bool unconverged, bool indeterminate, double equality_tol) {
  InequalityCertificate c;
  c.id = id;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.rel_slack = c.slack / std::max(rhs, 1e-300);
  c.params = std::move(params);
  c.error_budget = unconverged ? 10.0 * error_budget : error_budget;

  if (indeterminate || !std::isfinite(lhs) || !std::isfinite(rhs)) {
    c.verdict = Verdict::indeterminate;
    return c;
  }
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  const double eq_tol = equality_tol * scale;
  if (unconverged && std::abs(c.slack) <= c.error_budget) {
    c.verdict = Verdict::indeterminate;
  } else if (std::abs(c.slack) <= std::max(eq_tol, c.error_budget)) {
    c.verdict = Verdict::equality;
  } else if (c.slack > 0.0) {
    c.verdict = Verdict::holds;
  } else if (c.slack < -c.error_budget - eq_tol) {
    c.verdict = Verdict::violated;
  } else {
    c.verdict = Verdict::violated_within_error;
  }
  return c;
}

InequalityCertificate reject(CheckerId id, CertificateParams params, std::string reason) {
  InequalityCertificate c;
  c.id = id;
  c.params = std::move(params);
  c.lhs = c.rhs = c.slack = c.rel_slack = std::numeric_limits<double>::quiet_NaN();
  c.verdict = Verdict::rejected;
  c.note = std::move(reason);
  return c;
}

}  // namespace polarlp
