#include "polarlp/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace polarlp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kClusterTol = 1e-9;
constexpr double kResidualTol = 1e-8;

double relative_residual(const ComplexPoly& p, cplx z) {
  const double scale = p.eval_scale(z);
  return scale > 0.0 ? std::abs(evaluate(p, z)) / scale : 0.0;
}

bool aberth(const ComplexPoly& p, std::vector<cplx>& z, int max_iterations, int& iterations) {
  const int n = p.degree();
  const double r0 = std::pow(std::abs(p[0] / p.leading()), 1.0 / n);
  z.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / n + 0.4;
    z[j] = std::polar(r0, angle);
  }
  std::vector<bool> done(z.size(), false);
  for (iterations = 0; iterations < max_iterations; ++iterations) {
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const auto [v, d] = evaluate_with_derivative(p, z[i]);
      if (std::abs(v) <= 8.0 * kEps * p.eval_scale(z[i])) {
        done[i] = true;
        continue;
      }
      all_done = false;
      cplx repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const cplx newton = v / d;
      const cplx step = newton / (1.0 - newton * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
      z[i] -= step;
      if (std::abs(step) <= 4.0 * kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) return true;
  }
  return false;
}

std::vector<cplx> companion_roots(const ComplexPoly& p) {
  const int n = p.degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[i] / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

// Taylor coefficients p^{(j)}(c)/j!, j = 0..n, by repeated synthetic division.
std::vector<cplx> taylor_shift(std::span<const cplx> coeffs, cplx c) {
  std::vector<cplx> t(coeffs.begin(), coeffs.end());
  const std::size_t n = t.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t j = n - 1; j-- > k;) t[j] += c * t[j + 1];
  }
  return t;
}

// Collapse groups of roots that approximate a multiple root onto their centroid.
// A root of multiplicity m is a simple root of P^{(m-1)}; Newton on that
// derivative pins it down far better than the centroid of the cluster.
cplx refine_multiple(const ComplexPoly& p, std::size_t m, cplx c0, double spread) {
  ComplexPoly d = p;
  for (std::size_t j = 1; j < m; ++j) d = derivative(d);
  if (d.degree() < 1) return c0;
  cplx c = c0;
  for (int it = 0; it < 60; ++it) {
    const auto [v, s] = evaluate_with_derivative(d, c);
    if (s == cplx{}) break;
    const cplx step = v / s;
    c -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(c), 1.0)) break;
  }
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c - c0) > spread + 1e-300) return c0;
  return c;
}

void collapse_clusters(const ComplexPoly& p, std::vector<cplx>& z) {
  const std::size_t n = z.size();
  std::vector<cplx> abs_coeffs(p.coeffs().size());
  std::transform(p.coeffs().begin(), p.coeffs().end(), abs_coeffs.begin(),
                 [](cplx a) { return cplx{std::abs(a), 0.0}; });
  std::vector<bool> assigned(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j) {
      if (!assigned[j]) free.push_back(j);
    }
    std::sort(free.begin(), free.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(z[a] - z[i]) < std::abs(z[b] - z[i]);
    });
    for (std::size_t m = free.size(); m >= 2; --m) {
      cplx centroid{};
      for (std::size_t q = 0; q < m; ++q) centroid += z[free[q]];
      centroid /= static_cast<double>(m);
      double spread = 0.0;
      for (std::size_t q = 0; q < m; ++q) spread = std::max(spread, std::abs(z[free[q]] - centroid));
      if (spread > 0.25 * (1.0 + std::abs(centroid))) continue;
      centroid = refine_multiple(p, m, centroid, spread);
      const auto t = taylor_shift(p.coeffs(), centroid);
      const auto s = taylor_shift(abs_coeffs, cplx{std::abs(centroid), 0.0});
      bool multiple = true;
      for (std::size_t j = 0; j < m && multiple; ++j) {
        multiple = std::abs(t[j]) <= kClusterTol * s[j].real();
      }
      if (!multiple) continue;
      for (std::size_t q = 0; q < m; ++q) {
        z[free[q]] = centroid;
        assigned[free[q]] = true;
      }
      break;
    }
    assigned[i] = true;
  }
}

}  // namespace

RootsResult find_roots(const ComplexPoly& p, int max_iterations) {
  if (p.is_zero()) throw std::invalid_argument("find_roots: zero polynomial");
  RootsResult result;
  // exact roots at the origin
  int zeros_at_origin = 0;
  while (zeros_at_origin < p.degree() && p[zeros_at_origin] == cplx{}) ++zeros_at_origin;
  result.roots.assign(static_cast<std::size_t>(zeros_at_origin), cplx{});
  ComplexPoly reduced(std::vector<cplx>(p.coeffs().begin() + zeros_at_origin, p.coeffs().end()));

  std::vector<cplx> z;
  result.method = "aberth";
  if (reduced.degree() == 1) {
    z = {-reduced[0] / reduced[1]};
  } else if (reduced.degree() > 1) {
    if (!aberth(reduced, z, max_iterations, result.iterations)) {
      z = companion_roots(reduced);
      result.method = "companion";
    }
    collapse_clusters(reduced, z);
  }
  result.roots.insert(result.roots.end(), z.begin(), z.end());

  result.max_relative_residual = 0.0;
  for (const cplx& r : result.roots) {
    result.max_relative_residual = std::max(result.max_relative_residual, relative_residual(p, r));
  }
  result.converged = result.max_relative_residual <= kResidualTol;
  return result;
}

ZeroModulus max_zero_modulus(const ComplexPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("max_zero_modulus: degree must be >= 1");
  const RootsResult r = find_roots(p);
  ZeroModulus out;
  if (!r.converged) {
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.failure = "root residual check failed (" + r.method + ")";
    return out;
  }
  for (const cplx& z : r.roots) out.value = std::max(out.value, std::abs(z));
  out.ok = true;
  return out;
}

}  // namespace polarlp
