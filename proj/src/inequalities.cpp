#include "polarlp/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polarlp/roots.hpp"

namespace polarlp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kParamTol = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// rounding floor of every error budget, relative to the larger side
constexpr double kRoundingFloor = 1e-13;

using Reason = std::optional<std::string>;

Reason need_degree(const Subject& s) {
  if (s.degree() < 1) return "polynomial must be nonconstant";
  return std::nullopt;
}

Reason need_k(double k) {
  if (!(k > 0.0) || k > 1.0) return "k must lie in (0, 1]";
  return std::nullopt;
}

Reason need_zeros_within(const Subject& s, double k) {
  if (std::isnan(s.zero_radius())) return "zero locations could not be verified";
  if (s.zero_radius() > k * (1.0 + kParamTol)) {
    std::ostringstream os;
    os << "zeros reach modulus " << s.zero_radius() << " > k = " << k;
    return os.str();
  }
  return std::nullopt;
}

Reason need_gap(const Subject& s, int mu) {
  if (mu < 1 || mu > s.degree()) return "mu must lie in [1, n]";
  if (s.gap() < mu) return "coefficient gap is smaller than mu";
  return std::nullopt;
}

Reason need_alpha(cplx alpha, double threshold) {
  if (std::abs(alpha) < threshold * (1.0 - kParamTol)) return "|alpha| is below its threshold";
  return std::nullopt;
}

Reason need_beta(cplx beta) {
  if (std::abs(beta) > 1.0 + kParamTol) return "|beta| must be <= 1";
  return std::nullopt;
}

Reason need_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) return "p must be > 0";
  return std::nullopt;
}

template <class... R>
Reason first_failure(R&&... reasons) {
  Reason out;
  ((out = out ? out : reasons), ...);
  return out;
}

// |alpha| - threshold, clamped at zero for the boundary case.
double excess(cplx alpha, double threshold) { return std::max(0.0, std::abs(alpha) - threshold); }

double floor_budget(double lhs, double rhs) {
  return kRoundingFloor * std::max(std::abs(lhs), std::abs(rhs));
}

std::size_t grid_for(const Subject& s, const CheckOptions& opt) {
  if (opt.grid_size > 0) return opt.grid_size;
  return std::max<std::size_t>(64 * static_cast<std::size_t>(s.degree()), 1024);
}

// m / k^{n-mu}
double scaled_min(const Subject& s, double k, int mu) {
  return s.min_modulus(k) / std::pow(k, s.degree() - mu);
}

// Running-error bound for Horner evaluation of p anywhere on |z| = r.
double horner_error(const ComplexPoly& p, double r) {
  double sum = 0.0, rj = 1.0;
  for (int j = 0; j <= p.degree(); ++j, rj *= r) sum += std::abs(p[j]) * rj;
  return 4.0 * (p.degree() + 1) * kEps * sum;
}

// Uncertainty of m / k^{n-mu}: m is a minimum of Horner values on |z| = k.
double scaled_min_error(const Subject& s, double k, int mu) {
  return (horner_error(s.poly(), k) + kRoundingFloor * s.min_modulus(k)) / std::pow(k, s.degree() - mu);
}

// Error in max|D_alpha P| - n m / k^{n-mu}.
double polar_factor_error(const Subject& s, double k, int mu, cplx alpha) {
  return kRoundingFloor * s.max_polar_modulus(alpha) + s.degree() * scaled_min_error(s, k, mu);
}

// Shared tail of the shifted-mean family:
//   lhs = n * factor * (int |P + m beta / k^{n-mu}|^p)^{1/p}
//   rhs = kernel(k, mu, p) * rhs_factor
// rhs_factor_error bounds the rounding in rhs_factor, which may be a difference
// of nearly equal terms.
InequalityCertificate shifted_mean_certificate(CheckerId id, const Subject& s, double k, int mu, cplx beta,
                                               double p, double factor, double rhs_factor, double rhs_factor_error,
                                               CertificateParams params, const CheckOptions& opt) {
  const double n = s.degree();
  const double shift_scale = scaled_min(s, k, mu);
  const CircleMeanResult mean = s.shifted_mean(shift_scale * beta, p, opt.quad_tol);
  const CircleMeanResult kernel = s.kernel(k, mu, p, opt.quad_tol);
  const double lhs = n * factor * mean.mean;
  const double rhs = kernel.mean * rhs_factor;
  // moving the shift by d moves the mean by at most (2 pi)^{1/p} d for p >= 1
  const double shift_error = std::abs(beta) * scaled_min_error(s, k, mu) * std::pow(kTwoPi, 1.0 / std::max(p, 1.0));
  const double budget = n * factor * (mean.mean_error_estimate + shift_error) +
                        std::abs(rhs_factor) * kernel.mean_error_estimate + kernel.mean * rhs_factor_error +
                        floor_budget(lhs, rhs);
  return certify(id, lhs, rhs, budget, std::move(params), !(mean.converged && kernel.converged),
                 mean.indeterminate || kernel.indeterminate, opt.equality_tol);
}

InequalityCertificate ratio_certificate(CheckerId id, const Subject& s, double k, int mu, cplx alpha, cplx beta,
                                        double p, CertificateParams params, const CheckOptions& opt) {
  const double n = s.degree();
  const double threshold = std::pow(k, mu);
  const double factor = excess(alpha, threshold);
  const CircleMeanResult kernel = s.kernel(k, mu, p, opt.quad_tol);
  const double rhs = kernel.mean;
  if (factor == 0.0) {
    return certify(id, 0.0, rhs, kernel.mean_error_estimate + floor_budget(0.0, rhs), std::move(params),
                   !kernel.converged, false, opt.equality_tol);
  }
  const RatioTerms terms{alpha, beta, k, mu, s.min_modulus(k)};
  const CircleMeanResult ratio = s.ratio_mean(terms, p, opt.quad_tol);
  const double lhs = n * factor * ratio.mean;
  const double budget = n * factor * ratio.mean_error_estimate + kernel.mean_error_estimate + floor_budget(lhs, rhs);
  auto c = certify(id, lhs, rhs, budget, std::move(params), !(ratio.converged && kernel.converged),
                   ratio.indeterminate, opt.equality_tol);
  if (ratio.indeterminate) c.note = "ratio integrand unbounded at a node";
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subject

Subject::Subject(ComplexPoly p, std::optional<double> zero_radius, std::optional<double> home_k,
                 std::optional<Factorization> factors)
    : poly_(std::move(p)),
      derivative_(polarlp::derivative(poly_)),
      reciprocal_(conjugate_reciprocal(poly_)),
      reciprocal_derivative_(polarlp::derivative(reciprocal_)),
      factors_(std::move(factors)),
      unit_(factors_ ? CircleSamples(poly_, *factors_, 1.0) : CircleSamples(poly_, 1.0)),
      home_k_(home_k) {
  if (poly_.degree() >= 1) {
    gap_ = lacunary_gap(poly_);
    if (zero_radius) {
      zero_radius_ = *zero_radius;
    } else {
      const ZeroModulus zm = max_zero_modulus(poly_);
      zero_radius_ = zm.ok ? zm.value : std::numeric_limits<double>::quiet_NaN();
    }
  }
  max_p_ = max_modulus_on_circle(poly_, 1.0).value;
  max_dp_ = max_modulus_on_circle(derivative_, 1.0).value;
  min_p_unit_ = min_modulus_on_circle(poly_, 1.0).value;
  if (home_k_ && *home_k_ > 0.0) {
    home_min_ = min_modulus_on_circle(poly_, *home_k_).value;
    home_min_derivative_ = min_modulus_on_circle(derivative_, *home_k_).value;
  }
}

Subject::Subject(const InstanceSpec& instance)
    : Subject(instance.poly,
              [&] {
                double r = 0.0;
                for (const cplx& z : instance.zeros) r = std::max(r, std::abs(z));
                return r;
              }(),
              instance.k, Factorization{instance.zeros, instance.leading}) {}

double Subject::min_modulus(double k) const {
  if (home_k_ && *home_k_ == k) return home_min_;
  return min_modulus_on_circle(poly_, k).value;
}

double Subject::min_derivative_modulus(double k) const {
  if (home_k_ && *home_k_ == k) return home_min_derivative_;
  return min_modulus_on_circle(derivative_, k).value;
}

double Subject::max_polar_modulus(cplx alpha) const {
  const std::pair<double, double> key{alpha.real(), alpha.imag()};
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->polar_max.find(key); it != memo_->polar_max.end()) return it->second;
  }
  const double value = max_modulus_on_circle(polar_derivative(poly_, alpha), 1.0).value;
  std::lock_guard lock(memo_->mutex);
  memo_->polar_max.emplace(key, value);
  return value;
}

template <class F>
CircleMeanResult Subject::memoized(const Key& key, F&& compute) const {
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->means.find(key); it != memo_->means.end()) return it->second;
  }
  // computed outside the lock; a duplicate computation under contention is harmless
  CircleMeanResult r = compute();
  std::lock_guard lock(memo_->mutex);
  return memo_->means.emplace(key, r).first->second;
}

CircleMeanResult Subject::shifted_mean(cplx shift, double p, double tol) const {
  return memoized({0.0, shift.real(), shift.imag(), p, tol, 0.0, 0.0, 0.0},
                  [&] { return shifted_lp_mean(unit_, shift, p, tol); });
}

CircleMeanResult Subject::ratio_mean(const RatioTerms& t, double p, double tol) const {
  // m is a function of k, so it is not part of the key
  return memoized({1.0 + t.mu, t.alpha.real(), t.alpha.imag(), t.beta.real(), t.beta.imag(), t.k, p, tol},
                  [&] { return ratio_lp_mean(unit_, t, p, tol); });
}

CircleMeanResult Subject::excess_mean(cplx alpha, double c, double q, double tol) const {
  return memoized({-1.0, alpha.real(), alpha.imag(), c, q, tol, 0.0, 0.0},
                  [&] { return polar_excess_mean(unit_, alpha, c, q, tol); });
}

CircleMeanResult Subject::kernel(double k, int mu, double p, double tol) const {
  return memoized({-2.0, k, static_cast<double>(mu), p, tol, 0.0, 0.0, 0.0},
                  [&] { return kernel_integral(k, mu, p, tol); });
}

// ---------------------------------------------------------------------------
// Max-norm inequalities

InequalityCertificate check_bernstein(const Subject& s, const CheckOptions& opt) {
  const CheckerId id = CheckerId::bernstein;
  if (auto r = need_degree(s)) return reject(id, {}, *r);
  const double lhs = s.max_derivative_modulus();
  const double rhs = s.degree() * s.max_modulus();
  return certify(id, lhs, rhs, floor_budget(lhs, rhs), {}, false, false, opt.equality_tol);
}

InequalityCertificate check_turan(const Subject& s, const CheckOptions& opt) {
  const CheckerId id = CheckerId::turan;
  if (auto r = first_failure(need_degree(s), need_zeros_within(s, 1.0))) return reject(id, {}, *r);
  const double lhs = s.degree() * s.max_modulus();
  const double rhs = 2.0 * s.max_derivative_modulus();
  return certify(id, lhs, rhs, floor_budget(lhs, rhs), {}, false, false, opt.equality_tol);
}

InequalityCertificate check_malik_max(const Subject& s, double k, const CheckOptions& opt) {
  const CheckerId id = CheckerId::malik_max;
  CertificateParams params{.k = k};
  if (auto r = first_failure(need_degree(s), need_k(k), need_zeros_within(s, k))) return reject(id, params, *r);
  const double lhs = s.degree() * s.max_modulus();
  const double rhs = (1.0 + k) * s.max_derivative_modulus();
  return certify(id, lhs, rhs, floor_budget(lhs, rhs), params, false, false, opt.equality_tol);
}

InequalityCertificate check_aziz_shah(const Subject& s, double k, int mu, const CheckOptions& opt) {
  const CheckerId id = CheckerId::aziz_shah;
  CertificateParams params{.k = k, .mu = mu};
  if (auto r = first_failure(need_degree(s), need_k(k), need_zeros_within(s, k), need_gap(s, mu))) {
    return reject(id, params, *r);
  }
  const int n = s.degree();
  const double min_term = opt.aziz_shah_derivative_min ? s.min_derivative_modulus(k) : s.min_modulus(k);
  const double lhs = n * s.max_modulus();
  const double lead = (1.0 + std::pow(k, mu)) * s.max_derivative_modulus();
  const double tail = n / std::pow(k, n - mu) * min_term;
  const double rhs = lead - tail;
  const double min_error = opt.aziz_shah_derivative_min ? horner_error(s.derivative(), k) : horner_error(s.poly(), k);
  const double budget = kRoundingFloor * std::max({std::abs(lhs), lead, tail}) + n / std::pow(k, n - mu) * min_error;
  auto c = certify(id, lhs, rhs, budget, params, false, false, opt.equality_tol);
  if (opt.aziz_shah_derivative_min) c.note = "min term uses |P'|";
  return c;
}

InequalityCertificate check_polar_max(const Subject& s, double k, cplx alpha, const CheckOptions& opt) {
  const CheckerId id = CheckerId::polar_max;
  CertificateParams params{.alpha = alpha, .k = k};
  if (auto r = first_failure(need_degree(s), need_k(k), need_zeros_within(s, k), need_alpha(alpha, k))) {
    return reject(id, params, *r);
  }
  const double lhs = s.degree() * excess(alpha, k) * s.max_modulus();
  const double rhs = (1.0 + k) * s.max_polar_modulus(alpha);
  return certify(id, lhs, rhs, floor_budget(lhs, rhs), params, false, false, opt.equality_tol);
}

InequalityCertificate check_polar_lacunary_max(const Subject& s, double k, int mu, cplx alpha,
                                               const CheckOptions& opt) {
  const CheckerId id = CheckerId::polar_lacunary_max;
  CertificateParams params{.alpha = alpha, .k = k, .mu = mu};
  const double threshold = std::pow(k, mu);
  if (auto r = first_failure(need_degree(s), need_k(k), need_zeros_within(s, k), need_gap(s, mu),
                             need_alpha(alpha, threshold))) {
    return reject(id, params, *r);
  }
  const double lhs = s.degree() * excess(alpha, threshold) * s.max_modulus();
  const double rhs = (1.0 + threshold) * s.max_polar_modulus(alpha);
  return certify(id, lhs, rhs, floor_budget(lhs, rhs), params, false, false, opt.equality_tol);
}

InequalityCertificate check_polar_lacunary_min(const Subject& s, double k, int mu, cplx alpha,
                                               const CheckOptions& opt) {
  const CheckerId id = CheckerId::polar_lacunary_min;
  CertificateParams params{.alpha = alpha, .k = k, .mu = mu};
  const double threshold = std::pow(k, mu);
  if (auto r = first_failure(need_degree(s), need_k(k), need_zeros_within(s, k), need_gap(s, mu),
                             need_alpha(alpha, threshold))) {
    return reject(id, params, *r);
  }
  const int n = s.degree();
  const double m = opt.polar_min == MinCircle::unit ? s.min_modulus_unit() : s.min_modulus(k);
  const double m_term = n * (std::abs(alpha) - k) / std::pow(k, n - mu);
  const double m_weight = std::abs(m_term);
  const double lhs = n * excess(alpha, threshold) * s.max_modulus() + m_term * m;
  const double rhs = (1.0 + threshold) * s.max_polar_modulus(alpha);
  const double m_error = horner_error(s.poly(), opt.polar_min == MinCircle::unit ? 1.0 : k);
  const double budget =
      kRoundingFloor * std::max({std::abs(lhs), rhs, m_weight * m}) + m_weight * m_error;
  auto c = certify(id, lhs, rhs, budget, params, false, false, opt.equality_tol);
  if (opt.polar_min == MinCircle::unit) c.note = "min term on |z| = 1";
  return c;
}

// ---------------------------------------------------------------------------
// L_p inequalities

InequalityCertificate check_malik_lp(const Subject& s, double p, const CheckOptions& opt) {
  const CheckerId id = CheckerId::malik_lp;
  CertificateParams params{.p = p};
  if (auto r = first_failure(need_degree(s), need_p(p), need_zeros_within(s, 1.0))) return reject(id, params, *r);
  return shifted_mean_certificate(id, s, 1.0, 1, cplx{}, p, 1.0, s.max_derivative_modulus(),
                                  kRoundingFloor * s.max_derivative_modulus(), params, opt);
}

InequalityCertificate check_aziz_lp(const Subject& s, double k, double p, const CheckOptions& opt) {
  const CheckerId id = CheckerId::aziz_lp;
  CertificateParams params{.k = k, .p = p};
  if (auto r = first_failure(need_degree(s), need_k(k), need_p(p), need_zeros_within(s, k))) {
    return reject(id, params, *r);
  }
  return shifted_mean_certificate(id, s, k, 1, cplx{}, p, 1.0, s.max_derivative_modulus(),
                                  kRoundingFloor * s.max_derivative_modulus(), params, opt);
}

InequalityCertificate check_polar_lp(const Subject& s, double k, cplx alpha, double p, const CheckOptions& opt) {
  const CheckerId id = CheckerId::polar_lp;
  CertificateParams params{.alpha = alpha, .k = k, .p = p};
  if (auto r = first_failure(need_degree(s), need_k(k), need_p(p), need_zeros_within(s, k), need_alpha(alpha, k))) {
    return reject(id, params, *r);
  }
  const double rhs_factor = s.max_polar_modulus(alpha) - s.degree() * scaled_min(s, k, 1);
  return shifted_mean_certificate(id, s, k, 1, cplx{}, p, excess(alpha, k), rhs_factor,
                                  polar_factor_error(s, k, 1, alpha), params, opt);
}

InequalityCertificate check_polar_lacunary_lp(const Subject& s, double k, int mu, cplx alpha, double p,
                                              const CheckOptions& opt) {
  const CheckerId id = CheckerId::polar_lacunary_lp;
  CertificateParams params{.alpha = alpha, .k = k, .mu = mu, .p = p};
  const double threshold = std::pow(k, mu);
  if (auto r = first_failure(need_degree(s), need_k(k), need_p(p), need_zeros_within(s, k), need_gap(s, mu),
                             need_alpha(alpha, threshold))) {
    return reject(id, params, *r);
  }
  const double rhs_factor = s.max_polar_modulus(alpha) - s.degree() * scaled_min(s, k, mu);
  return shifted_mean_certificate(id, s, k, mu, cplx{}, p, excess(alpha, threshold), rhs_factor,
                                  polar_factor_error(s, k, mu, alpha), params, opt);
}

InequalityCertificate check_ratio_mean(const Subject& s, double k, cplx alpha, cplx beta, double p,
                                       const CheckOptions& opt) {
  const CheckerId id = CheckerId::ratio_mean;
  CertificateParams params{.alpha = alpha, .beta = beta, .k = k, .p = p};
  if (auto r = first_failure(need_degree(s), need_k(k), need_p(p), need_zeros_within(s, k), need_alpha(alpha, k),
                             need_beta(beta))) {
    return reject(id, params, *r);
  }
  return ratio_certificate(id, s, k, 1, alpha, beta, p, params, opt);
}

InequalityCertificate check_shifted_polar_mean(const Subject& s, double k, cplx alpha, cplx beta, double p,
                                               const CheckOptions& opt) {
  const CheckerId id = CheckerId::shifted_polar_mean;
  CertificateParams params{.alpha = alpha, .beta = beta, .k = k, .p = p};
  if (auto r = first_failure(need_degree(s), need_k(k), need_p(p), need_zeros_within(s, k), need_alpha(alpha, k),
                             need_beta(beta))) {
    return reject(id, params, *r);
  }
  const double rhs_factor = s.max_polar_modulus(alpha) - s.degree() * scaled_min(s, k, 1);
  return shifted_mean_certificate(id, s, k, 1, beta, p, excess(alpha, k), rhs_factor,
                                  polar_factor_error(s, k, 1, alpha), params, opt);
}

InequalityCertificate check_shifted_derivative_mean(const Subject& s, double k, cplx beta, double p,
                                                    const CheckOptions& opt) {
  const CheckerId id = CheckerId::shifted_derivative_mean;
  CertificateParams params{.beta = beta, .k = k, .p = p};
  if (auto r = first_failure(need_degree(s), need_k(k), need_p(p), need_zeros_within(s, k), need_beta(beta))) {
    return reject(id, params, *r);
  }
  return shifted_mean_certificate(id, s, k, 1, beta, p, 1.0, s.max_derivative_modulus(),
                                  kRoundingFloor * s.max_derivative_modulus(), params, opt);
}

InequalityCertificate check_lacunary_ratio_mean(const Subject& s, double k, int mu, cplx alpha, cplx beta, double p,
                                                const CheckOptions& opt) {
  const CheckerId id = CheckerId::lacunary_ratio_mean;
  CertificateParams params{.alpha = alpha, .beta = beta, .k = k, .mu = mu, .p = p};
  if (auto r = first_failure(need_degree(s), need_k(k), need_p(p), need_zeros_within(s, k), need_gap(s, mu),
                             need_alpha(alpha, std::pow(k, mu)), need_beta(beta))) {
    return reject(id, params, *r);
  }
  return ratio_certificate(id, s, k, mu, alpha, beta, p, params, opt);
}

InequalityCertificate check_lacunary_shifted_mean(const Subject& s, double k, int mu, cplx alpha, cplx beta,
                                                  double p, const CheckOptions& opt) {
  const CheckerId id = CheckerId::lacunary_shifted_mean;
  CertificateParams params{.alpha = alpha, .beta = beta, .k = k, .mu = mu, .p = p};
  const double threshold = std::pow(k, mu);
  if (auto r = first_failure(need_degree(s), need_k(k), need_p(p), need_zeros_within(s, k), need_gap(s, mu),
                             need_alpha(alpha, threshold), need_beta(beta))) {
    return reject(id, params, *r);
  }
  const double rhs_factor = s.max_polar_modulus(alpha) - s.degree() * scaled_min(s, k, mu);
  return shifted_mean_certificate(id, s, k, mu, beta, p, excess(alpha, threshold), rhs_factor,
                                  polar_factor_error(s, k, mu, alpha), params, opt);
}

InequalityCertificate check_holder_split(const Subject& s, double k, int mu, cplx alpha, cplx beta, double p,
                                         double r, double s_exp, const CheckOptions& opt) {
  const CheckerId id = CheckerId::holder_split;
  CertificateParams params{.alpha = alpha, .beta = beta, .k = k, .mu = mu, .p = p, .r = r, .s = s_exp};
  const double threshold = std::pow(k, mu);
  Reason conj;
  if (!(r > 1.0) || !(s_exp > 1.0) || std::abs(1.0 / r + 1.0 / s_exp - 1.0) > kParamTol) {
    conj = "r, s must be conjugate exponents > 1";
  }
  if (auto why = first_failure(need_degree(s), need_k(k), need_p(p), need_zeros_within(s, k), need_gap(s, mu),
                               need_alpha(alpha, threshold), need_beta(beta), conj)) {
    return reject(id, params, *why);
  }
  const double n = s.degree();
  const double factor = excess(alpha, threshold);
  const double shift_scale = scaled_min(s, k, mu);
  const CircleMeanResult mean = s.shifted_mean(shift_scale * beta, p, opt.quad_tol);
  const CircleMeanResult kernel = s.kernel(k, mu, p * r, opt.quad_tol);
  const CircleMeanResult excess_mean =
      s.excess_mean(alpha, n * shift_scale, p * s_exp, opt.quad_tol);
  const double lhs = n * factor * mean.mean;
  const double rhs = kernel.mean * excess_mean.mean;
  const double budget = n * factor * mean.mean_error_estimate + kernel.mean_error_estimate * excess_mean.mean +
                        kernel.mean * excess_mean.mean_error_estimate + floor_budget(lhs, rhs);
  return certify(id, lhs, rhs, budget, params, !(mean.converged && kernel.converged && excess_mean.converged),
                 mean.indeterminate || kernel.indeterminate || excess_mean.indeterminate, opt.equality_tol);
}

// ---------------------------------------------------------------------------
// Pointwise bounds

namespace {

// Grid scan for a pointwise bound lhs <= rhs. Each node carries its own
// rounding budget; the node kept is the one closest to failing once that
// budget is granted.
struct WorstNode {
  double score = std::numeric_limits<double>::infinity();
  double lhs = 0.0, rhs = 0.0, budget = 0.0, theta = 0.0;
  const char* chain = "";

  void consider(double l, double r, double b, double t, const char* name = "") {
    const double sc = (r - l + b) / std::max({l, r, 1e-300});
    if (sc < score) *this = {sc, l, r, b, t, name};
  }
};

}  // namespace

InequalityCertificate check_reciprocal_derivative(const Subject& s, double k, int mu, const CheckOptions& opt) {
  const CheckerId id = CheckerId::reciprocal_derivative;
  CertificateParams params{.k = k, .mu = mu};
  if (auto r = first_failure(need_degree(s), need_k(k), need_zeros_within(s, k), need_gap(s, mu))) {
    return reject(id, params, *r);
  }
  const int n = s.degree();
  const bool on_unit = opt.reciprocal_min == MinCircle::unit;
  const double m = on_unit ? s.min_modulus_unit() : s.min_modulus(k);
  const double weight = std::pow(k, n - mu);
  const double c = n * m / weight;
  const double k_mu = std::pow(k, mu);
  const double budget = horner_error(s.reciprocal_derivative(), 1.0) + k_mu * horner_error(s.derivative(), 1.0) +
                        n * horner_error(s.poly(), on_unit ? 1.0 : k) / weight;
  const std::size_t grid = grid_for(s, opt);
  WorstNode worst;
  for (std::size_t j = 0; j < grid; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(grid);
    const cplx z = std::polar(1.0, theta);
    const double lhs = std::abs(evaluate(s.reciprocal_derivative(), z)) + c;
    const double rhs = k_mu * std::abs(evaluate(s.derivative(), z));
    worst.consider(lhs, rhs, budget, theta);
  }
  auto cert = certify(id, worst.lhs, worst.rhs, worst.budget + floor_budget(worst.lhs, worst.rhs), params, false,
                      false, opt.equality_tol);
  std::ostringstream os;
  os << "worst node theta=" << worst.theta;
  if (on_unit) os << "; m on |z| = 1";
  cert.note = os.str();
  return cert;
}

InequalityCertificate check_pointwise_chain(const Subject& s, double k, int mu, cplx alpha, cplx beta,
                                            const CheckOptions& opt) {
  const CheckerId id = CheckerId::pointwise_chain;
  CertificateParams params{.alpha = alpha, .beta = beta, .k = k, .mu = mu};
  const double k_mu = std::pow(k, mu);
  if (auto r = first_failure(need_degree(s), need_k(k), need_zeros_within(s, k), need_gap(s, mu),
                             need_alpha(alpha, k_mu), need_beta(beta))) {
    return reject(id, params, *r);
  }
  const int n = s.degree();
  const double nn = n;
  const double c = n * scaled_min(s, k, mu);
  const double c_error = n * scaled_min_error(s, k, mu);
  const double factor = excess(alpha, k_mu);
  const cplx beta_bar = std::conj(beta);
  const double err_q = horner_error(s.reciprocal(), 1.0);
  const double err_dq = horner_error(s.reciprocal_derivative(), 1.0);
  const double err_p = horner_error(s.poly(), 1.0);
  const double err_dp = horner_error(s.derivative(), 1.0);
  const double reciprocal_budget = err_dq + c_error + k_mu * (nn * err_q + err_dq);
  const double polar_budget = factor * err_dp + c_error + nn * err_p + (std::abs(alpha) + 1.0) * err_dp;
  const std::size_t grid = grid_for(s, opt);
  WorstNode worst;
  for (std::size_t j = 0; j < grid; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(grid);
    const cplx z = std::polar(1.0, theta);
    const auto [q, dq] = evaluate_with_derivative(s.reciprocal(), z);
    const auto [pv, dp] = evaluate_with_derivative(s.poly(), z);
    // |Q' + c conj(beta) z^{n-1}| <= k^mu |n Q - z Q'|
    worst.consider(std::abs(dq + c * beta_bar * std::pow(z, n - 1)), k_mu * std::abs(nn * q - z * dq),
                   reciprocal_budget, theta, "reciprocal");
    // (|alpha| - k^mu) |P'| + c <= |D_alpha P|
    const cplx d = nn * pv + (alpha - z) * dp;
    worst.consider(factor * std::abs(dp) + c, std::abs(d), polar_budget, theta, "polar");
  }
  auto cert = certify(id, worst.lhs, worst.rhs, worst.budget + floor_budget(worst.lhs, worst.rhs), params, false,
                      false, opt.equality_tol);
  std::ostringstream os;
  os << "worst node theta=" << worst.theta << " (" << worst.chain << " bound)";
  cert.note = os.str();
  return cert;
}

// ---------------------------------------------------------------------------
// Subordination witness

WitnessTrace subordination_witness(const Subject& s, double k, int mu, cplx beta, std::size_t grid_size,
                                   std::vector<double> mean_exponents, double quad_tol) {
  const int n = s.degree();
  if (n < 1) throw std::invalid_argument("subordination_witness: polynomial must be nonconstant");
  if (!(k > 0.0) || k > 1.0) throw std::invalid_argument("subordination_witness: k must lie in (0, 1]");
  if (mu < 1 || mu > n) throw std::invalid_argument("subordination_witness: mu must lie in [1, n]");
  const double k_mu = std::pow(k, mu);
  const double c = n * scaled_min(s, k, mu);
  const cplx beta_bar = std::conj(beta);
  const ComplexPoly& q = s.reciprocal();
  const double nn = n;

  double den_scale = 0.0;
  for (int j = 0; j <= q.degree(); ++j) den_scale += std::abs(q[j]) * (nn + j);
  den_scale *= k_mu;

  struct Value {
    cplx w;
    bool ok;
    double err = 0.0;  ///< rounding bound on |1 + k^mu w|
  };
  const double num_err = horner_error(s.reciprocal_derivative(), 1.0) + 4.0 * kEps * c;
  const double den_err = k_mu * (nn * horner_error(q, 1.0) + horner_error(s.reciprocal_derivative(), 1.0));
  // With known zeros z_i and u_i = 1 / (1 - conj(z_i) z):
  //   n Q - z Q' = Q sum u_i,  Q' = -Q sum conj(z_i) u_i,
  // so Q cancels from w. This resolves the removable singularity at a zero on
  // the circle when m = 0.
  auto factored_witness = [&](cplx z) -> Value {
    const Factorization& f = *s.factors();
    cplx sum_u{}, sum_zu{};
    double abs_u = 0.0, abs_zu = 0.0;
    cplx hit_sum{};
    int hits = 0;
    cplx qv = std::conj(f.leading);
    for (const cplx& zi : f.zeros) {
      const cplx d = 1.0 - std::conj(zi) * z;
      qv *= d;
      if (d == cplx{}) {
        hit_sum += std::conj(zi);
        ++hits;
        continue;
      }
      const cplx u = 1.0 / d;
      sum_u += u;
      sum_zu += std::conj(zi) * u;
      abs_u += std::abs(u);
      abs_zu += std::abs(zi) * std::abs(u);
    }
    if (hits > 0) {
      // z is a zero of Q; only the removable case m = 0 has a limit
      if (c != 0.0) return {cplx{}, false};
      return {-z * hit_sum / (k_mu * static_cast<double>(hits)), true, 0.0};
    }
    if (sum_u == cplx{}) return {cplx{}, false};
    const cplx extra = c * beta_bar * std::pow(z, n - 1) / qv;
    const cplx w = z * (extra - sum_zu) / (k_mu * sum_u);
    const double rel = 4.0 * (n + 2) * kEps;
    return {w, true, k_mu * rel * ((abs_zu + std::abs(extra)) / std::abs(sum_u) + std::abs(w) * abs_u / std::abs(sum_u))};
  };
  auto witness = [&](cplx z) -> Value {
    if (s.factors()) return factored_witness(z);
    const auto [qv, dqv] = evaluate_with_derivative(q, z);
    const cplx den = k_mu * (nn * qv - z * dqv);
    if (std::abs(den) <= 1e-12 * den_scale) return {cplx{}, false};
    const cplx w = z * (dqv + c * beta_bar * std::pow(z, n - 1)) / den;
    return {w, true, k_mu * (num_err + std::abs(w) * den_err) / std::abs(den)};
  };

  WitnessTrace out;
  const std::size_t grid = grid_size > 0 ? grid_size : std::max<std::size_t>(64 * static_cast<std::size_t>(n), 1024);
  out.theta_grid.resize(grid);
  out.w_values.resize(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(grid);
    const cplx z = std::polar(1.0, theta);
    out.theta_grid[j] = theta;
    const Value v = witness(z);
    if (!v.ok) {
      out.partial = true;
      out.flagged_nodes.push_back(j);
      continue;
    }
    out.w_values[j] = v.w;
    out.max_abs_w = std::max(out.max_abs_w, std::abs(v.w));

    // |1 + k^mu w| = n |Q + m conj(beta) z^n / k^{n-mu}| / |P'|
    const double dp = std::abs(evaluate(s.derivative(), z));
    if (dp > 0.0) {
      const double left = std::abs(1.0 + k_mu * v.w);
      const double right = nn * std::abs(evaluate(q, z) + (c / nn) * beta_bar * std::pow(z, n)) / dp;
      out.identity_max_rel_dev =
          std::max(out.identity_max_rel_dev, std::abs(left - right) / std::max({left, right, 1e-300}));
    }
  }
  // the numerator carries the factor z, so w(0) is evaluated rather than assumed
  out.w_at_zero = witness(cplx{}).w;

  // |1 + k^mu w| has kinks where Q + (c/n) conj(beta) z^n vanishes on the
  // circle, and w has poles where n Q - z Q' does
  std::vector<double> breaks;
  {
    std::vector<cplx> num(q.coeffs().begin(), q.coeffs().end());
    num.resize(n + 1);
    num[n] += (c / nn) * beta_bar;
    std::vector<cplx> den(n + 1);
    for (int j = 0; j <= q.degree(); ++j) den[j] = (nn - j) * q[j];
    for (auto* coeffs : {&num, &den}) {
      const ComplexPoly poly(std::move(*coeffs));
      if (poly.degree() >= 1)
        for (double a : zero_angles_near_circle(poly, 1.0)) breaks.push_back(a);
    }
  }

  QuadratureOptions qopt;
  qopt.tol = quad_tol;
  for (double p : mean_exponents) {
    auto g = [&](double theta, std::size_t, std::size_t) {
      const Value v = witness(std::polar(1.0, theta));
      return v.ok ? std::abs(1.0 + k_mu * v.w) : std::numeric_limits<double>::quiet_NaN();
    };
    WitnessTrace::MeanComparison mc;
    mc.p = p;
    const PowerIntegral w_int = integrate_power(g, p, breaks, qopt);
    mc.witness.raw_integral = w_int.raw;
    mc.witness.mean = w_int.mean;
    mc.witness.p = p;
    mc.witness.abs_error_estimate = w_int.abs_error;
    mc.witness.mean_error_estimate = w_int.mean_error;
    mc.witness.nodes_used = w_int.nodes;
    mc.witness.converged = w_int.converged && !w_int.singular;
    mc.witness.indeterminate = w_int.singular;
    mc.kernel = s.kernel(k, mu, p, quad_tol);
    // how far rounding in w can move int |1 + k^mu w|^p
    auto spread = [&](double theta, std::size_t, std::size_t) {
      const Value v = witness(std::polar(1.0, theta));
      if (!v.ok) return std::numeric_limits<double>::quiet_NaN();
      const double g = std::abs(1.0 + k_mu * v.w);
      return std::max(std::pow(g + v.err, p) - std::pow(g, p), std::pow(g, p) - std::pow(std::max(g - v.err, 0.0), p));
    };
    const PowerIntegral spread_int = integrate_power(spread, 1.0, breaks, qopt);
    mc.rounding_allowance = spread_int.raw + spread_int.abs_error;
    mc.holds = mc.witness.converged &&
               mc.witness.raw_integral <= mc.kernel.raw_integral + mc.witness.abs_error_estimate +
                                              mc.kernel.abs_error_estimate + mc.rounding_allowance +
                                              kRoundingFloor * mc.kernel.raw_integral;
    out.mean_comparisons.push_back(mc);
  }
  return out;
}

}  // namespace polarlp
