#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polarlp/poly.hpp"

namespace polarlp {

/// A polynomial together with the constraint data it is checked against:
/// all zeros in |z| <= k and the gap condition a_{n-j} = 0 for 1 <= j < mu.
struct InstanceSpec {
  std::string id;
  std::vector<cplx> zeros;
  cplx leading{1.0, 0.0};
  double k = 1.0;
  int mu = 1;
  /// Expansion of leading * prod(z - zeros). Generators that know the exact
  /// sparsity pattern build it structurally instead of by expansion.
  ComplexPoly poly;

  int degree() const { return poly.degree(); }
};

/// Expands the zeros and validates; throws std::invalid_argument on failure.
InstanceSpec make_instance(std::string id, std::vector<cplx> zeros, cplx leading, double k, int mu = 1);

/// Empty when the instance satisfies its invariants, otherwise the reason.
std::optional<std::string> validation_error(const InstanceSpec& instance);

/// Zero-location acceptance: |z| <= k (1 + 1e-12).
inline bool inside_disk(cplx z, double k) { return std::abs(z) <= k * (1.0 + 1e-12); }

}  // namespace polarlp
