#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polarlp/poly.hpp"
#include "polarlp/quadrature.hpp"

namespace polarlp {

/// A raw circle integral int_0^{2pi} |f(r e^{i theta})|^p dtheta.
/// No 1/(2 pi) normalization anywhere.
struct CircleMeanResult {
  double raw_integral = 0.0;
  double mean = 0.0;  ///< raw_integral^{1/p}
  double p = 0.0;
  double radius = 1.0;
  double abs_error_estimate = 0.0;
  double mean_error_estimate = 0.0;
  std::size_t nodes_used = 0;
  bool converged = false;
  /// The integrand was unbounded (vanishing denominator) at some node.
  bool indeterminate = false;
};

enum class ExtremumKind { min, max };

struct ExtremumResult {
  double value = 0.0;
  double arg_theta = 0.0;  ///< in [0, 2pi)
  double radius = 1.0;
  ExtremumKind kind = ExtremumKind::min;
  double refined_to = 0.0;  ///< final bracket width in theta
};

/// P = leading * prod(z - zeros). Evaluating in this form keeps full relative
/// accuracy next to the zeros, where the expanded form is rounding noise.
struct Factorization {
  std::vector<cplx> zeros;
  cplx leading{1.0, 0.0};
};

/// P and P' from the factors; the slope is exact at a zero too.
ValueAndSlope evaluate_factored(const Factorization& f, cplx z);

/// P and P' tabulated on a dyadic grid of a circle. Quadratures whose node
/// grid divides the table read from it; anything else is evaluated directly.
class CircleSamples {
 public:
  struct Node {
    cplx z;
    cplx value;
    cplx slope;
  };

  CircleSamples(ComplexPoly p, double radius, std::size_t table_size = std::size_t{1} << 14);
  /// factors must multiply out to p; they are used for every evaluation.
  CircleSamples(ComplexPoly p, Factorization factors, double radius,
                std::size_t table_size = std::size_t{1} << 14);

  Node at(double theta, std::size_t index, std::size_t count) const;

  const ComplexPoly& poly() const { return poly_; }
  double radius() const { return radius_; }
  /// Angles of zeros of P lying within relative distance 1e-3 of the circle.
  std::span<const double> near_zero_angles() const { return near_zero_angles_; }
  bool factored() const { return factors_.has_value(); }

 private:
  ValueAndSlope evaluate(cplx z) const;
  void tabulate(std::size_t table_size);

  ComplexPoly poly_;
  std::optional<Factorization> factors_;
  double radius_;
  std::vector<Node> table_;
  std::vector<double> near_zero_angles_;
};

/// Angles of the zeros of p within relative distance rel_band of |z| = radius.
std::vector<double> zero_angles_near_circle(const ComplexPoly& p, double radius, double rel_band = 1e-3);

/// int_0^{2pi} |P(r e^{i theta})|^p dtheta by the doubling trapezoidal rule.
CircleMeanResult lp_mean(const ComplexPoly& p, double exponent, double radius = 1.0, double tol = 1e-10);
CircleMeanResult lp_mean(const CircleSamples& samples, double exponent, double tol = 1e-10);

/// int_0^{2pi} |P(e^{i theta}) + shift|^p dtheta on the unit circle of samples.
CircleMeanResult shifted_lp_mean(const CircleSamples& samples, cplx shift, double exponent, double tol = 1e-10);

/// int_0^{2pi} |1 + k^mu e^{i theta}|^p dtheta.
CircleMeanResult kernel_integral(double k, int mu, double exponent, double tol = 1e-10);

ExtremumResult min_modulus_on_circle(const ComplexPoly& p, double radius = 1.0);
ExtremumResult max_modulus_on_circle(const ComplexPoly& p, double radius = 1.0);

/// Inputs shared by the ratio-form integrand
///   |P(e^{i theta}) + m beta / k^{n-mu}| / (|D_alpha P(e^{i theta})| - n m / k^{n-mu}).
struct RatioTerms {
  cplx alpha;
  cplx beta;
  double k = 1.0;
  int mu = 1;
  double m = 0.0;  ///< min_{|z|=k} |P(z)|
};

/// Ratio-form mean on the unit circle; m is computed as min_{|z|=k}|P|.
/// A node whose denominator is not above its own rounding error makes the
/// result indeterminate.
CircleMeanResult ratio_lp_mean(const ComplexPoly& p, cplx alpha, cplx beta, double k, int mu, double exponent,
                               double tol = 1e-10);
CircleMeanResult ratio_lp_mean(const CircleSamples& unit_samples, const RatioTerms& terms, double exponent,
                               double tol = 1e-10);

/// int_0^{2pi} (|D_alpha P(e^{i theta})| - c)^q dtheta with c = n m / k^{n-mu}; the
/// base is clamped at 0.
CircleMeanResult polar_excess_mean(const CircleSamples& unit_samples, cplx alpha, double c, double exponent,
                                   double tol = 1e-10);

}  // namespace polarlp
