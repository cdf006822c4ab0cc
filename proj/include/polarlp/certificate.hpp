#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "polarlp/poly.hpp"

namespace polarlp {

/// One identifier per checked inequality.
enum class CheckerId {
  bernstein,               // max|P'| <= n max|P|
  turan,                   // n max|P| <= 2 max|P'|, zeros in the unit disk
  malik_max,               // n max|P| <= (1+k) max|P'|
  aziz_shah,               // lacunary refinement with a min_{|z|=k} term
  malik_lp,                // L_p form of turan
  aziz_lp,                 // L_p form of malik_max
  polar_max,               // polar-derivative form of malik_max
  polar_lacunary_max,      // lacunary polar form, |alpha| >= k^mu
  polar_lacunary_min,      // polar_lacunary_max refined by a min-modulus term
  polar_lp,                // L_p polar form with the n m / k^{n-1} correction
  polar_lacunary_lp,       // lacunary L_p polar form
  ratio_mean,              // ratio-form L_p bound, mu = 1
  shifted_polar_mean,      // shifted L_p polar bound, mu = 1
  shifted_derivative_mean, // limit |alpha| -> inf of shifted_polar_mean
  lacunary_ratio_mean,     // ratio-form L_p bound for gap mu
  lacunary_shifted_mean,   // shifted L_p polar bound for gap mu
  holder_split,            // Holder-split variant with conjugate exponents r, s
  reciprocal_derivative,   // pointwise k^mu|P'| >= |Q'| + n m / k^{n-mu}
  pointwise_chain,         // pointwise bounds behind the ratio-form results
};

inline constexpr std::array<CheckerId, 19> kAllCheckers = {
    CheckerId::bernstein,           CheckerId::turan,
    CheckerId::malik_max,           CheckerId::aziz_shah,
    CheckerId::malik_lp,            CheckerId::aziz_lp,
    CheckerId::polar_max,           CheckerId::polar_lacunary_max,
    CheckerId::polar_lacunary_min,  CheckerId::polar_lp,
    CheckerId::polar_lacunary_lp,   CheckerId::ratio_mean,
    CheckerId::shifted_polar_mean,  CheckerId::shifted_derivative_mean,
    CheckerId::lacunary_ratio_mean, CheckerId::lacunary_shifted_mean,
    CheckerId::holder_split,        CheckerId::reciprocal_derivative,
    CheckerId::pointwise_chain,
};

std::string_view to_string(CheckerId id);
std::optional<CheckerId> checker_from_string(std::string_view name);

enum class Verdict { holds, equality, violated_within_error, violated, indeterminate, rejected };

std::string_view to_string(Verdict v);

/// Parameter record; only the fields a checker uses are set.
struct CertificateParams {
  std::optional<cplx> alpha{};
  std::optional<cplx> beta{};
  std::optional<double> k{};
  std::optional<int> mu{};
  std::optional<double> p{};
  std::optional<double> r{};
  std::optional<double> s{};
};

/// Outcome of checking lhs <= rhs.
struct InequalityCertificate {
  CheckerId id = CheckerId::bernstein;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;      ///< rhs - lhs
  double rel_slack = 0.0;  ///< slack / max(rhs, 1e-300)
  CertificateParams params;
  double error_budget = 0.0;
  Verdict verdict = Verdict::holds;
  std::string note;  ///< rejection reason or extra detail
};

inline constexpr double kDefaultEqualityTol = 1e-8;

/// Classify lhs <= rhs.
///
/// equality iff |slack| <= max(eq_tol * max(lhs, rhs), budget); violated only
/// below -(budget + eq_tol * max(lhs, rhs)). With unconverged = true the budget
/// is inflated tenfold and a slack inside it is reported as indeterminate.
InequalityCertificate certify(CheckerId id, double lhs, double rhs, double error_budget, CertificateParams params,
                              bool unconverged = false, bool indeterminate = false,
                              double equality_tol = kDefaultEqualityTol);

InequalityCertificate reject(CheckerId id, CertificateParams params, std::string reason);

}  // namespace polarlp
