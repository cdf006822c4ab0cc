#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "polarlp/certificate.hpp"
#include "polarlp/circle.hpp"
#include "polarlp/instance.hpp"
#include "polarlp/poly.hpp"

namespace polarlp {

/// Which circle the min-modulus term of a checker is taken on.
enum class MinCircle { disk_radius, unit };

struct CheckOptions {
  double quad_tol = 1e-10;
  double equality_tol = kDefaultEqualityTol;
  /// Nodes for the pointwise checkers; 0 selects max(64 n, 1024).
  std::size_t grid_size = 0;
  /// m in the reciprocal-derivative bound. The bound fails on the unit circle
  /// reading, so the disk radius is the default.
  MinCircle reciprocal_min = MinCircle::disk_radius;
  /// min-modulus term of polar_lacunary_min. Random instances violate the
  /// unit-circle form, so the disk radius is the default.
  MinCircle polar_min = MinCircle::disk_radius;
  /// aziz_shah subtracts min_{|z|=k}|P| by default; true switches to |P'|.
  bool aziz_shah_derivative_min = false;
};

/// A polynomial prepared for checking: derivative, reciprocal, unit-circle
/// samples and extrema, computed once and shared read-only by every checker.
class Subject {
 public:
  /// zero_radius: max |zero| when known (declared zeros); otherwise computed
  /// from the roots. home_k: a disk radius whose m is cached. factors, when
  /// given, are used for the unit-circle samples.
  explicit Subject(ComplexPoly p, std::optional<double> zero_radius = std::nullopt,
                   std::optional<double> home_k = std::nullopt,
                   std::optional<Factorization> factors = std::nullopt);
  explicit Subject(const InstanceSpec& instance);

  const ComplexPoly& poly() const { return poly_; }
  const ComplexPoly& derivative() const { return derivative_; }
  const ComplexPoly& reciprocal() const { return reciprocal_; }
  const ComplexPoly& reciprocal_derivative() const { return reciprocal_derivative_; }
  const CircleSamples& unit_samples() const { return unit_; }
  /// Declared zeros and leading coefficient, when the subject came with them.
  const std::optional<Factorization>& factors() const { return factors_; }
  int degree() const { return poly_.degree(); }
  int gap() const { return gap_; }
  /// NaN when the roots could not be verified.
  double zero_radius() const { return zero_radius_; }
  double max_modulus() const { return max_p_; }
  double max_derivative_modulus() const { return max_dp_; }
  double min_modulus_unit() const { return min_p_unit_; }

  /// min_{|z|=k}|P|; served from the cache for the home radius.
  double min_modulus(double k) const;
  /// min_{|z|=k}|P'|.
  double min_derivative_modulus(double k) const;
  /// max_{|z|=1}|D_alpha P|.
  double max_polar_modulus(cplx alpha) const;

  // Memoized circle integrals. Sweeps ask for the same integral under many
  // parameter points (the shifted mean does not see alpha, the excess mean
  // does not see beta), so each distinct one is computed once. Thread-safe.
  CircleMeanResult shifted_mean(cplx shift, double p, double tol) const;
  CircleMeanResult ratio_mean(const RatioTerms& terms, double p, double tol) const;
  CircleMeanResult excess_mean(cplx alpha, double c, double q, double tol) const;
  CircleMeanResult kernel(double k, int mu, double p, double tol) const;

 private:
  using Key = std::tuple<double, double, double, double, double, double, double, double>;
  struct Memo {
    std::mutex mutex;
    std::map<Key, CircleMeanResult> means;
    std::map<std::pair<double, double>, double> polar_max;
  };
  template <class F>
  CircleMeanResult memoized(const Key& key, F&& compute) const;

  ComplexPoly poly_;
  ComplexPoly derivative_;
  ComplexPoly reciprocal_;
  ComplexPoly reciprocal_derivative_;
  std::optional<Factorization> factors_;
  CircleSamples unit_;
  int gap_ = 1;
  double zero_radius_ = 0.0;
  double max_p_ = 0.0;
  double max_dp_ = 0.0;
  double min_p_unit_ = 0.0;
  std::optional<double> home_k_;
  double home_min_ = 0.0;
  double home_min_derivative_ = 0.0;
  std::unique_ptr<Memo> memo_ = std::make_unique<Memo>();
};

InequalityCertificate check_bernstein(const Subject& s, const CheckOptions& opt = {});
InequalityCertificate check_turan(const Subject& s, const CheckOptions& opt = {});
InequalityCertificate check_malik_max(const Subject& s, double k, const CheckOptions& opt = {});
InequalityCertificate check_aziz_shah(const Subject& s, double k, int mu, const CheckOptions& opt = {});
InequalityCertificate check_malik_lp(const Subject& s, double p, const CheckOptions& opt = {});
InequalityCertificate check_aziz_lp(const Subject& s, double k, double p, const CheckOptions& opt = {});
InequalityCertificate check_polar_max(const Subject& s, double k, cplx alpha, const CheckOptions& opt = {});
InequalityCertificate check_polar_lacunary_max(const Subject& s, double k, int mu, cplx alpha,
                                               const CheckOptions& opt = {});
InequalityCertificate check_polar_lacunary_min(const Subject& s, double k, int mu, cplx alpha,
                                               const CheckOptions& opt = {});
InequalityCertificate check_polar_lp(const Subject& s, double k, cplx alpha, double p, const CheckOptions& opt = {});
InequalityCertificate check_polar_lacunary_lp(const Subject& s, double k, int mu, cplx alpha, double p,
                                              const CheckOptions& opt = {});
InequalityCertificate check_ratio_mean(const Subject& s, double k, cplx alpha, cplx beta, double p,
                                       const CheckOptions& opt = {});
InequalityCertificate check_shifted_polar_mean(const Subject& s, double k, cplx alpha, cplx beta, double p,
                                               const CheckOptions& opt = {});
InequalityCertificate check_shifted_derivative_mean(const Subject& s, double k, cplx beta, double p,
                                                    const CheckOptions& opt = {});
InequalityCertificate check_lacunary_ratio_mean(const Subject& s, double k, int mu, cplx alpha, cplx beta, double p,
                                                const CheckOptions& opt = {});
InequalityCertificate check_lacunary_shifted_mean(const Subject& s, double k, int mu, cplx alpha, cplx beta,
                                                  double p, const CheckOptions& opt = {});
InequalityCertificate check_holder_split(const Subject& s, double k, int mu, cplx alpha, cplx beta, double p,
                                         double r, double s_exp, const CheckOptions& opt = {});
InequalityCertificate check_reciprocal_derivative(const Subject& s, double k, int mu, const CheckOptions& opt = {});
InequalityCertificate check_pointwise_chain(const Subject& s, double k, int mu, cplx alpha, cplx beta,
                                            const CheckOptions& opt = {});

/// Values of the subordinating function
///   w(z) = z (Q'(z) + n m conj(beta) z^{n-1} / k^{n-mu}) / (k^mu (n Q(z) - z Q'(z)))
/// on the unit circle, together with the checks built on it.
struct WitnessTrace {
  std::vector<double> theta_grid;
  std::vector<cplx> w_values;
  double max_abs_w = 0.0;
  cplx w_at_zero{};
  /// Some node had a vanishing denominator; those nodes are skipped.
  bool partial = false;
  std::vector<std::size_t> flagged_nodes;

  struct MeanComparison {
    double p = 0.0;
    CircleMeanResult witness;  ///< int |1 + k^mu w(e^{i theta})|^p
    CircleMeanResult kernel;   ///< int |1 + k^mu e^{i theta}|^p
    /// Bound on how much evaluation rounding in w moves the witness integral.
    double rounding_allowance = 0.0;
    bool holds = false;
  };
  std::vector<MeanComparison> mean_comparisons;
  /// max over nodes of | |1 + k^mu w| - n |Q + m conj(beta) z^n / k^{n-mu}| / |P'| |,
  /// relative to the larger side.
  double identity_max_rel_dev = 0.0;
};

WitnessTrace subordination_witness(const Subject& s, double k, int mu, cplx beta, std::size_t grid_size = 0,
                                   std::vector<double> mean_exponents = {0.5, 1.0, 2.0, 4.0},
                                   double quad_tol = 1e-10);

}  // namespace polarlp
