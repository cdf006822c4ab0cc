#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace polarlp {

using cplx = std::complex<double>;

/// Univariate complex polynomial with ascending coefficients a_0..a_n.
///
/// Trailing exact zeros are trimmed on construction, so the stored leading
/// coefficient is nonzero unless the polynomial is identically zero. The zero
/// polynomial is kept as a single zero coefficient and reports degree 0 with
/// is_zero() set; derivative() of a constant produces it.
class ComplexPoly {
 public:
  ComplexPoly();
  explicit ComplexPoly(std::vector<cplx> coeffs);
  ComplexPoly(std::initializer_list<cplx> coeffs);

  static ComplexPoly monomial(int degree, cplx coeff = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cplx{}; }
  bool is_constant() const { return coeffs_.size() == 1; }

  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx operator[](int j) const { return j >= 0 && j <= degree() ? coeffs_[j] : cplx{}; }
  cplx leading() const { return coeffs_.back(); }

  /// max_j |a_j|
  double max_abs_coeff() const;
  /// sum_j |a_j| |z|^j, the natural rounding scale for evaluation at z.
  double eval_scale(cplx z) const;

  ComplexPoly operator*(cplx c) const;
  friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;

  std::string to_string() const;

 private:
  std::vector<cplx> coeffs_;
};

/// Horner evaluation of sum a_j z^j.
cplx evaluate(const ComplexPoly& p, cplx z);

/// Value and first derivative in a single Horner pass.
struct ValueAndSlope {
  cplx value;
  cplx slope;
};
ValueAndSlope evaluate_with_derivative(const ComplexPoly& p, cplx z);

/// P'. A constant input yields the zero polynomial (is_zero()).
ComplexPoly derivative(const ComplexPoly& p);

/// D_a P(z) = n P(z) + (a - z) P'(z), where n = deg P.
///
/// Coefficientwise (D_a P)_j = (n - j) a_j + a (j + 1) a_{j+1}; the z^n term
/// is analytically zero and is never formed. Throws std::invalid_argument for
/// a constant input.
ComplexPoly polar_derivative(const ComplexPoly& p, cplx alpha);

/// Q(z) = z^n conj(P(1/conj z)), i.e. Q_j = conj(a_{n-j}). The degree drops
/// when a_0 = 0.
ComplexPoly conjugate_reciprocal(const ComplexPoly& p);

/// leading * prod (z - zeros_i). Throws std::invalid_argument when leading = 0.
ComplexPoly from_zeros(std::span<const cplx> zeros, cplx leading = 1.0);

/// Largest mu >= 1 with a_{n-1} = ... = a_{n-mu+1} = 0 (absolute tolerance
/// rel_tol * max|a_j|), capped at n. Throws for constant input.
int lacunary_gap(const ComplexPoly& p, double rel_tol = 1e-12);

}  // namespace polarlp
