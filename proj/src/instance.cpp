#include "polarlp/instance.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace polarlp {

InstanceSpec make_instance(std::string id, std::vector<cplx> zeros, cplx leading, double k, int mu) {
  InstanceSpec s;
  s.id = std::move(id);
  s.poly = from_zeros(zeros, leading);
  s.zeros = std::move(zeros);
  s.leading = leading;
  s.k = k;
  s.mu = mu;
  if (auto err = validation_error(s)) throw std::invalid_argument("invalid instance " + s.id + ": " + *err);
  return s;
}

std::optional<std::string> validation_error(const InstanceSpec& s) {
  const int n = s.poly.degree();
  if (!(s.k > 0.0) || s.k > 1.0) return "k must lie in (0, 1]";
  if (n < 1) return "polynomial must be nonconstant";
  if (static_cast<int>(s.zeros.size()) != n) return "zero count does not match degree";
  if (s.leading == cplx{}) return "leading coefficient is zero";
  if (std::abs(s.poly.leading() - s.leading) > 1e-12 * std::abs(s.leading)) {
    return "leading coefficient does not match the polynomial";
  }
  for (const cplx& z : s.zeros) {
    if (!inside_disk(z, s.k)) {
      std::ostringstream os;
      os << "zero of modulus " << std::abs(z) << " lies outside |z| <= " << s.k;
      return os.str();
    }
  }
  if (s.mu < 1 || s.mu > n) return "mu must lie in [1, n]";
  if (lacunary_gap(s.poly) < s.mu) return "coefficients violate the gap condition for mu";
  for (const cplx& z : s.zeros) {
    const double scale = s.poly.eval_scale(z);
    if (std::abs(evaluate(s.poly, z)) > 1e-8 * scale) return "declared zero is not a zero of the polynomial";
  }
  return std::nullopt;
}

}  // namespace polarlp
