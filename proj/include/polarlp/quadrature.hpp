#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace polarlp {

struct QuadratureOptions {
  /// Stop when successive estimates of the raw integral differ by at most
  /// max(tol, tol * value).
  double tol = 1e-10;
  std::size_t min_nodes = 256;
  std::size_t max_nodes = std::size_t{1} << 20;
};

/// Result of integrating g(theta)^p over [0, 2pi) for a nonnegative g.
struct PowerIntegral {
  double raw = 0.0;        ///< int_0^{2pi} g^p dtheta (may overflow to inf for large p)
  double mean = 0.0;       ///< raw^{1/p}, computed in scaled form so it never overflows
  double abs_error = 0.0;  ///< |I_N - I_{N/2}| on the raw integral
  double mean_error = 0.0; ///< first-order propagation of abs_error to the mean
  std::size_t nodes = 0;
  bool converged = false;
  bool singular = false;   ///< g returned a non-finite value at some node
};

namespace detail {

// Sidi's sin^4 periodizing map of [0, 1] onto itself; psi' vanishes to
// fourth order at both ends.
inline double sidi_map(double t) {
  constexpr double pi = std::numbers::pi;
  return t - 2.0 / (3.0 * pi) * std::sin(2.0 * pi * t) + 1.0 / (12.0 * pi) * std::sin(4.0 * pi * t);
}
inline double sidi_weight(double t) {
  constexpr double pi = std::numbers::pi;
  return 1.0 - 4.0 / 3.0 * std::cos(2.0 * pi * t) + 1.0 / 3.0 * std::cos(4.0 * pi * t);
}

// sum_j w_j (g_j / scale)^p, rescaled whenever a larger g arrives.
struct ScaledSum {
  double p;
  double scale = 0.0;
  double sum = 0.0;

  void add(double weight, double g) {
    if (weight == 0.0) return;
    if (g > scale) {
      if (scale > 0.0) sum *= std::pow(scale / g, p);
      scale = g;
    }
    if (g > 0.0) sum += weight * std::pow(g / scale, p);
  }
};

inline std::vector<double> normalize_breaks(std::span<const double> breaks) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> b;
  for (double x : breaks) {
    double y = std::fmod(x, two_pi);
    if (y < 0) y += two_pi;
    b.push_back(y);
  }
  std::sort(b.begin(), b.end());
  std::vector<double> out;
  for (double x : b) {
    if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
  }
  if (out.size() > 1 && out.front() + two_pi - out.back() <= 1e-12) out.pop_back();
  return out;
}

}  // namespace detail

/// Trapezoidal rule for int_0^{2pi} g(theta)^p dtheta with node doubling.
///
/// g is called as g(theta, index, count). Without breaks the nodes are the
/// uniform grid theta = 2 pi index / count, and (index, count) let callers
/// serve values from precomputed tables. With breaks (angles where g is not
/// smooth) the circle is cut into panels, each integrated after a sin^4
/// periodizing substitution; such nodes are passed with count = 0.
template <class G>
PowerIntegral integrate_power(G&& g, double p, std::span<const double> breaks,
                              const QuadratureOptions& opt) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const std::vector<double> cuts = detail::normalize_breaks(breaks);

  PowerIntegral out;
  detail::ScaledSum acc{p};
  std::size_t nodes = 0;
  bool have_previous = false;
  double previous = 0.0;  // estimate in units of previous_scale
  double previous_scale = 0.0;

  auto feed = [&](double theta, std::size_t index, std::size_t count, double weight) {
    const double v = g(theta, index, count);
    if (!std::isfinite(v)) {
      out.singular = true;
      return;
    }
    acc.add(weight, std::abs(v));
    ++nodes;
  };

  // Panels: [cuts[i], cuts[i+1]] with wraparound; a single cut gives one
  // panel spanning the whole circle.
  const std::size_t panels = cuts.size();
  std::size_t level_nodes = cuts.empty() ? opt.min_nodes
                                         : std::max<std::size_t>(16, opt.min_nodes / std::max<std::size_t>(panels, 1));
  bool first = true;
  while (true) {
    // Add the nodes new at this level: all of them at the first level, the
    // odd ones afterwards. Weights are relative to 1/level_nodes.
    if (cuts.empty()) {
      const std::size_t step = first ? 1 : 2;
      const std::size_t start = first ? 0 : 1;
      for (std::size_t j = start; j < level_nodes; j += step) {
        feed(two_pi * static_cast<double>(j) / static_cast<double>(level_nodes), j, level_nodes, 1.0);
        if (out.singular) break;
      }
    } else {
      for (std::size_t i = 0; i < panels && !out.singular; ++i) {
        const double a = cuts[i];
        const double b = (i + 1 < panels) ? cuts[i + 1] : cuts[0] + two_pi;
        const double len = b - a;
        const std::size_t step = first ? 1 : 2;
        for (std::size_t j = 1; j < level_nodes; j += step) {
          const double t = static_cast<double>(j) / static_cast<double>(level_nodes);
          feed(a + len * detail::sidi_map(t), 0, 0, len / two_pi * detail::sidi_weight(t));
          if (out.singular) break;
        }
      }
    }
    if (out.singular) {
      out.nodes = nodes;
      out.raw = out.mean = std::numeric_limits<double>::quiet_NaN();
      out.abs_error = out.mean_error = std::numeric_limits<double>::infinity();
      return out;
    }
    // Each level halves the spacing, so the accumulated weighted sum
    // corresponds to level_nodes intervals of width 2pi/level_nodes (scaled).
    const double scale = acc.scale;
    const double estimate = acc.sum * two_pi / static_cast<double>(level_nodes);  // in units of scale^p
    const std::size_t total_nodes = nodes;
    if (have_previous) {
      const double prev_in_scale =
          (previous_scale == 0.0 || previous == 0.0) ? 0.0 : previous * std::pow(previous_scale / scale, p);
      const double diff = std::abs(estimate - prev_in_scale);
      // tolerance max(tol, tol*value) on the raw integral, in scaled units
      const double log_scale_p = scale > 0.0 ? p * std::log(scale) : 0.0;
      const double abs_tol_scaled = std::exp(std::log(opt.tol) - log_scale_p);
      const double tol_scaled = std::max(abs_tol_scaled, opt.tol * estimate);
      const bool done = diff <= tol_scaled;
      const bool capped = 2 * total_nodes > opt.max_nodes;
      if (done || capped) {
        out.converged = done;
        out.nodes = total_nodes;
        if (scale == 0.0 || estimate == 0.0) {
          out.raw = out.mean = 0.0;
          out.abs_error = out.mean_error = 0.0;
          if (scale == 0.0) return out;
        }
        out.mean = scale * std::pow(estimate, 1.0 / p);
        out.raw = std::exp(log_scale_p) * estimate;
        out.abs_error = std::exp(log_scale_p) * diff;
        out.mean_error = estimate > 0.0 ? out.mean * diff / (p * estimate) : 0.0;
        return out;
      }
    }
    have_previous = true;
    previous = estimate;
    previous_scale = scale;
    level_nodes *= 2;
    first = false;
  }
}

}  // namespace polarlp
