#include "polarlp/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace polarlp {

namespace {

void trim(std::vector<cplx>& c) {
  while (c.size() > 1 && c.back() == cplx{}) c.pop_back();
  if (c.empty()) c.push_back(cplx{});
}

void require_finite(const std::vector<cplx>& c) {
  for (const cplx& a : c) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("ComplexPoly: non-finite coefficient");
    }
  }
}

}  // namespace

ComplexPoly::ComplexPoly() : coeffs_{cplx{}} {}

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  require_finite(coeffs_);
  trim(coeffs_);
}

ComplexPoly::ComplexPoly(std::initializer_list<cplx> coeffs)
    : ComplexPoly(std::vector<cplx>(coeffs)) {}

ComplexPoly ComplexPoly::monomial(int degree, cplx coeff) {
  if (degree < 0) throw std::invalid_argument("monomial: negative degree");
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  c.back() = coeff;
  return ComplexPoly(std::move(c));
}

double ComplexPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const cplx& a : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

double ComplexPoly::eval_scale(cplx z) const {
  const double r = std::abs(z);
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * r + std::abs(*it);
  return s;
}

ComplexPoly ComplexPoly::operator*(cplx c) const {
  std::vector<cplx> out(coeffs_);
  for (cplx& a : out) a *= c;
  return ComplexPoly(std::move(out));
}

std::string ComplexPoly::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (j) os << ", ";
    os << '(' << coeffs_[j].real() << ',' << coeffs_[j].imag() << ')';
  }
  os << ']';
  return os.str();
}

cplx evaluate(const ComplexPoly& p, cplx z) {
  const auto c = p.coeffs();
  cplx acc = c.back();
  for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * z + c[j];
  return acc;
}

ValueAndSlope evaluate_with_derivative(const ComplexPoly& p, cplx z) {
  const auto c = p.coeffs();
  cplx v = c.back();
  cplx d{};
  for (std::size_t j = c.size() - 1; j-- > 0;) {
    d = d * z + v;
    v = v * z + c[j];
  }
  return {v, d};
}

ComplexPoly derivative(const ComplexPoly& p) {
  if (p.is_constant()) return ComplexPoly{};
  const auto c = p.coeffs();
  std::vector<cplx> out(c.size() - 1);
  for (std::size_t j = 1; j < c.size(); ++j) out[j - 1] = static_cast<double>(j) * c[j];
  return ComplexPoly(std::move(out));
}

ComplexPoly polar_derivative(const ComplexPoly& p, cplx alpha) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("polar_derivative: degree must be >= 1");
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    out[j] = static_cast<double>(n - j) * p[j] + alpha * static_cast<double>(j + 1) * p[j + 1];
  }
  return ComplexPoly(std::move(out));
}

ComplexPoly conjugate_reciprocal(const ComplexPoly& p) {
  const auto c = p.coeffs();
  std::vector<cplx> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = std::conj(c[c.size() - 1 - j]);
  return ComplexPoly(std::move(out));
}

ComplexPoly from_zeros(std::span<const cplx> zeros, cplx leading) {
  if (leading == cplx{}) throw std::invalid_argument("from_zeros: leading coefficient is zero");
  std::vector<cplx> c{1.0};
  c.reserve(zeros.size() + 1);
  for (const cplx& r : zeros) {
    c.push_back(cplx{});
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] = c[j - 1] - r * c[j];
    c[0] = -r * c[0];
  }
  for (cplx& a : c) a *= leading;
  return ComplexPoly(std::move(c));
}

int lacunary_gap(const ComplexPoly& p, double rel_tol) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("lacunary_gap: degree must be >= 1");
  const double tol = rel_tol * p.max_abs_coeff();
  int mu = 1;
  while (mu < n && std::abs(p[n - mu]) <= tol) ++mu;
  return mu;
}

}  // namespace polarlp
