#include "polarlp/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polarlp/roots.hpp"

namespace polarlp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGoldenWidth = 1e-12;
constexpr double kOnCircleTol = 1e-10;

void require_exponent(double exponent, double tol) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) throw std::invalid_argument("exponent p must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be > 0");
}

CircleMeanResult to_result(const PowerIntegral& q, double exponent, double radius) {
  CircleMeanResult r;
  r.raw_integral = q.raw;
  r.mean = q.mean;
  r.p = exponent;
  r.radius = radius;
  r.abs_error_estimate = q.abs_error;
  r.mean_error_estimate = q.mean_error;
  r.nodes_used = q.nodes;
  r.converged = q.converged && !q.singular;
  r.indeterminate = q.singular;
  return r;
}

QuadratureOptions options(double tol) {
  QuadratureOptions o;
  o.tol = tol;
  return o;
}

double wrap_angle(double t) {
  double y = std::fmod(t, kTwoPi);
  if (y < 0) y += kTwoPi;
  return y;
}

double modulus_at(const ComplexPoly& p, double radius, double theta) {
  return std::abs(evaluate(p, std::polar(radius, theta)));
}

// Golden-section search for the minimum of f on [a, b].
template <class F>
std::pair<double, double> golden_minimize(F&& f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > kGoldenWidth) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double t = 0.5 * (a + b);
  return {t, f(t)};
}

ExtremumResult extremum(const ComplexPoly& p, double radius, ExtremumKind kind) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  ExtremumResult out;
  out.radius = radius;
  out.kind = kind;
  if (p.is_constant()) {
    out.value = std::abs(p[0]);
    return out;
  }
  const double sign = kind == ExtremumKind::min ? 1.0 : -1.0;

  if (kind == ExtremumKind::min) {
    const RootsResult roots = find_roots(p);
    if (roots.converged) {
      for (const cplx& z : roots.roots) {
        if (std::abs(std::abs(z) - radius) <= kOnCircleTol * std::max(1.0, radius)) {
          out.value = 0.0;
          out.arg_theta = wrap_angle(std::arg(z));
          return out;
        }
      }
    }
  }

  const std::size_t n_scan = std::max<std::size_t>(8 * static_cast<std::size_t>(p.degree()), 512);
  const double h = kTwoPi / static_cast<double>(n_scan);
  std::vector<double> f(n_scan);
  for (std::size_t j = 0; j < n_scan; ++j) f[j] = sign * modulus_at(p, radius, h * static_cast<double>(j));

  std::vector<std::size_t> candidates;
  for (std::size_t j = 0; j < n_scan; ++j) {
    const double prev = f[(j + n_scan - 1) % n_scan];
    const double next = f[(j + 1) % n_scan];
    if (f[j] <= prev && f[j] <= next) candidates.push_back(j);
  }
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
  if (candidates.size() > 8) candidates.resize(8);

  std::size_t best_node = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
  double best_theta = h * static_cast<double>(best_node);
  double best = f[best_node];
  double width = h;
  auto objective = [&](double t) { return sign * modulus_at(p, radius, t); };
  for (std::size_t j : candidates) {
    const double center = h * static_cast<double>(j);
    const auto [t, v] = golden_minimize(objective, center - h, center + h);
    if (v <= best) {
      best = v;
      best_theta = t;
      width = kGoldenWidth;
    }
  }
  out.value = sign * best;
  out.arg_theta = wrap_angle(best_theta);
  out.refined_to = width;
  return out;
}

}  // namespace

ValueAndSlope evaluate_factored(const Factorization& f, cplx z) {
  cplx value = f.leading;
  cplx inv_sum{};
  std::size_t hit = f.zeros.size();
  for (std::size_t i = 0; i < f.zeros.size(); ++i) {
    const cplx d = z - f.zeros[i];
    value *= d;
    if (d == cplx{}) {
      if (hit == f.zeros.size()) hit = i;
    } else {
      inv_sum += 1.0 / d;
    }
  }
  if (hit == f.zeros.size()) return {value, value * inv_sum};
  // z is a zero: P' is the product of the other factors (zero again for a
  // repeated zero)
  cplx slope = f.leading;
  for (std::size_t i = 0; i < f.zeros.size(); ++i) {
    if (i != hit) slope *= z - f.zeros[i];
  }
  return {value, slope};
}

CircleSamples::CircleSamples(ComplexPoly p, double radius, std::size_t table_size)
    : poly_(std::move(p)), radius_(radius) {
  tabulate(table_size);
}

CircleSamples::CircleSamples(ComplexPoly p, Factorization factors, double radius, std::size_t table_size)
    : poly_(std::move(p)), factors_(std::move(factors)), radius_(radius) {
  if (static_cast<int>(factors_->zeros.size()) != poly_.degree()) {
    throw std::invalid_argument("CircleSamples: zero count does not match degree");
  }
  tabulate(table_size);
}

ValueAndSlope CircleSamples::evaluate(cplx z) const {
  return factors_ ? evaluate_factored(*factors_, z) : evaluate_with_derivative(poly_, z);
}

void CircleSamples::tabulate(std::size_t table_size) {
  if (!(radius_ > 0.0)) throw std::invalid_argument("radius must be > 0");
  table_.resize(table_size);
  for (std::size_t j = 0; j < table_size; ++j) {
    const cplx z = std::polar(radius_, kTwoPi * static_cast<double>(j) / static_cast<double>(table_size));
    const auto [v, d] = evaluate(z);
    table_[j] = {z, v, d};
  }
  if (poly_.is_constant()) return;
  if (factors_) {
    for (const cplx& z : factors_->zeros) {
      if (std::abs(std::abs(z) - radius_) <= 1e-3 * radius_) near_zero_angles_.push_back(wrap_angle(std::arg(z)));
    }
    std::sort(near_zero_angles_.begin(), near_zero_angles_.end());
    near_zero_angles_.erase(std::unique(near_zero_angles_.begin(), near_zero_angles_.end()),
                            near_zero_angles_.end());
  } else {
    near_zero_angles_ = zero_angles_near_circle(poly_, radius_);
  }
}

CircleSamples::Node CircleSamples::at(double theta, std::size_t index, std::size_t count) const {
  if (count != 0 && !table_.empty() && table_.size() % count == 0) {
    return table_[index * (table_.size() / count)];
  }
  const cplx z = std::polar(radius_, theta);
  const auto [v, d] = evaluate(z);
  return {z, v, d};
}

std::vector<double> zero_angles_near_circle(const ComplexPoly& p, double radius, double rel_band) {
  std::vector<double> out;
  if (p.is_constant()) return out;
  const RootsResult roots = find_roots(p);
  for (const cplx& z : roots.roots) {
    if (std::abs(std::abs(z) - radius) <= rel_band * radius) out.push_back(wrap_angle(std::arg(z)));
  }
  return out;
}

CircleMeanResult lp_mean(const ComplexPoly& p, double exponent, double radius, double tol) {
  return lp_mean(CircleSamples(p, radius, 0), exponent, tol);
}

CircleMeanResult lp_mean(const CircleSamples& samples, double exponent, double tol) {
  require_exponent(exponent, tol);
  auto g = [&](double theta, std::size_t j, std::size_t count) {
    return std::abs(samples.at(theta, j, count).value);
  };
  return to_result(integrate_power(g, exponent, samples.near_zero_angles(), options(tol)), exponent,
                   samples.radius());
}

CircleMeanResult shifted_lp_mean(const CircleSamples& samples, cplx shift, double exponent, double tol) {
  if (shift == cplx{}) return lp_mean(samples, exponent, tol);
  require_exponent(exponent, tol);
  std::vector<cplx> c(samples.poly().coeffs().begin(), samples.poly().coeffs().end());
  c[0] += shift;
  const std::vector<double> breaks = zero_angles_near_circle(ComplexPoly(std::move(c)), samples.radius());
  auto g = [&](double theta, std::size_t j, std::size_t count) {
    return std::abs(samples.at(theta, j, count).value + shift);
  };
  return to_result(integrate_power(g, exponent, breaks, options(tol)), exponent, samples.radius());
}

CircleMeanResult kernel_integral(double k, int mu, double exponent, double tol) {
  if (!(k > 0.0) || k > 1.0) throw std::invalid_argument("kernel_integral: k must lie in (0, 1]");
  if (mu < 1) throw std::invalid_argument("kernel_integral: mu must be >= 1");
  require_exponent(exponent, tol);
  const double rho = std::pow(k, mu);
  std::vector<double> breaks;
  if (rho >= 1.0 - 1e-3) breaks.push_back(std::numbers::pi);
  auto g = [rho](double theta, std::size_t, std::size_t) { return std::abs(1.0 + std::polar(rho, theta)); };
  return to_result(integrate_power(g, exponent, breaks, options(tol)), exponent, 1.0);
}

ExtremumResult min_modulus_on_circle(const ComplexPoly& p, double radius) {
  return extremum(p, radius, ExtremumKind::min);
}

ExtremumResult max_modulus_on_circle(const ComplexPoly& p, double radius) {
  return extremum(p, radius, ExtremumKind::max);
}

CircleMeanResult ratio_lp_mean(const ComplexPoly& p, cplx alpha, cplx beta, double k, int mu, double exponent,
                               double tol) {
  const RatioTerms terms{alpha, beta, k, mu, min_modulus_on_circle(p, k).value};
  return ratio_lp_mean(CircleSamples(p, 1.0, 0), terms, exponent, tol);
}

CircleMeanResult ratio_lp_mean(const CircleSamples& unit_samples, const RatioTerms& t, double exponent,
                               double tol) {
  require_exponent(exponent, tol);
  const ComplexPoly& p = unit_samples.poly();
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("ratio_lp_mean: degree must be >= 1");
  const double weight = std::pow(t.k, n - t.mu);
  const cplx shift = t.m * t.beta / weight;
  const double c = n * t.m / weight;
  const double nn = static_cast<double>(n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // rounding in |D_alpha P|: relative to the terms when factored, relative to
  // the coefficient scale when expanded
  double expanded_error = 0.0;
  for (int j = 0; j <= n; ++j) expanded_error += std::abs(p[j]) * (n + (std::abs(t.alpha) + 1.0) * j);
  expanded_error *= 4.0 * (n + 1) * eps;
  const double term_factor = 8.0 * (n + 1) * eps;
  auto g = [&](double theta, std::size_t j, std::size_t count) {
    const auto node = unit_samples.at(theta, j, count);
    const cplx lead = (t.alpha - node.z) * node.slope;
    const cplx d = nn * node.value + lead;
    const double err = unit_samples.factored()
                           ? term_factor * (nn * std::abs(node.value) + std::abs(lead)) + 4.0 * eps * c
                           : expanded_error + 4.0 * eps * c;
    const double denom = std::abs(d) - c;
    // a denominator inside its own rounding error has no reliable sign
    if (!(denom > err)) return std::numeric_limits<double>::infinity();
    return std::abs(node.value + shift) / denom;
  };
  // the numerator P + shift can vanish on the circle too
  std::vector<double> breaks(unit_samples.near_zero_angles().begin(), unit_samples.near_zero_angles().end());
  if (shift != cplx{}) {
    std::vector<cplx> shifted(p.coeffs().begin(), p.coeffs().end());
    shifted[0] += shift;
    for (double a : zero_angles_near_circle(ComplexPoly(std::move(shifted)), 1.0)) breaks.push_back(a);
  }
  return to_result(integrate_power(g, exponent, breaks, options(tol)), exponent, 1.0);
}

CircleMeanResult polar_excess_mean(const CircleSamples& unit_samples, cplx alpha, double c, double exponent,
                                   double tol) {
  require_exponent(exponent, tol);
  const double nn = static_cast<double>(unit_samples.poly().degree());
  auto g = [&](double theta, std::size_t j, std::size_t count) {
    const auto node = unit_samples.at(theta, j, count);
    const cplx d = nn * node.value + (alpha - node.z) * node.slope;
    return std::max(0.0, std::abs(d) - c);
  };
  return to_result(integrate_power(g, exponent, unit_samples.near_zero_angles(), options(tol)), exponent, 1.0);
}

}  // namespace polarlp
