#pragma once

#include <string>
#include <vector>

#include "polarlp/poly.hpp"

namespace polarlp {

struct RootsResult {
  std::vector<cplx> roots;
  bool converged = false;
  int iterations = 0;
  /// max_i |P(z_i)| / scale(z_i) after clustering.
  double max_relative_residual = 0.0;
  /// "aberth" or "companion".
  std::string method;
};

/// All roots of p (with multiplicity).
///
/// Aberth-Ehrlich simultaneous iteration, falling back to the eigenvalues of
/// the companion matrix when the iteration cap is hit. Clusters that behave
/// like a multiple root (the Taylor coefficients of p below the cluster size
/// vanish at the centroid) are collapsed onto one point: Newton on the
/// (m-1)-th derivative, started at the centroid. That is well-conditioned
/// where the individual cluster members are not.
/// converged is false when the final residual check fails.
RootsResult find_roots(const ComplexPoly& p, int max_iterations = 500);

struct ZeroModulus {
  double value = 0.0;
  bool ok = false;
  std::string failure;
};

/// max_i |z_i| over the roots of p; ok = false (value NaN) rather than a
/// silently wrong answer when the roots could not be verified.
ZeroModulus max_zero_modulus(const ComplexPoly& p);

}  // namespace polarlp
