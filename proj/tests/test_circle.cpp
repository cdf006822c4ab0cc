#include <doctest.h>

#include <cmath>
#include <random>

#include "polarlp/circle.hpp"

using namespace polarlp;

namespace {

constexpr double kPi = M_PI;

ComplexPoly random_poly(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(n + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return ComplexPoly(c);
}

double parseval(const ComplexPoly& p) {
  double s = 0.0;
  for (const cplx& a : p.coeffs()) s += std::norm(a);
  return 2.0 * kPi * s;
}

}  // namespace

TEST_SUITE("circle") {
  TEST_CASE("lp_mean examples") {
    const CircleMeanResult a = lp_mean({1.0, 1.0}, 2.0);
    CHECK(a.converged);
    CHECK(a.raw_integral == doctest::Approx(4.0 * kPi).epsilon(1e-13));
    CHECK(a.mean == doctest::Approx(std::sqrt(4.0 * kPi)).epsilon(1e-13));
    CHECK(lp_mean(ComplexPoly{cplx{0, 3}}, 0.7).raw_integral == doctest::Approx(2.0 * kPi * std::pow(3.0, 0.7)));
    CHECK(lp_mean({0.25, -1.0, 1.0}, 2.0).raw_integral == doctest::Approx(4.125 * kPi).epsilon(1e-13));
    CHECK_THROWS(lp_mean({1.0, 1.0}, 0.0));
  }

  TEST_CASE("Parseval on random polynomials") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
      const ComplexPoly p = random_poly(rng, t % 13);
      const CircleMeanResult r = lp_mean(p, 2.0);
      CHECK(std::abs(r.raw_integral - parseval(p)) <= 1e-12 * parseval(p));
    }
  }

  TEST_CASE("scaling by a constant") {
    std::mt19937_64 rng(2);
    const ComplexPoly p = random_poly(rng, 7);
    const cplx c{-1.5, 2.0};
    for (double e : {0.5, 1.0, 3.0}) {
      CHECK(lp_mean(p * c, e, 0.8).mean == doctest::Approx(std::abs(c) * lp_mean(p, e, 0.8).mean).epsilon(1e-12));
    }
  }

  TEST_CASE("zeros on the circle with small exponents") {
    // |z - 1| = 2 |sin(theta / 2)|, so int |z-1|^p = 2^{p+1} sqrt(pi) Gamma((p+1)/2) / Gamma(p/2 + 1)
    for (double e : {0.25, 0.5, 1.0, 3.0}) {
      const double exact = std::pow(2.0, e + 1) * std::sqrt(kPi) * std::tgamma((e + 1) / 2) / std::tgamma(e / 2 + 1);
      const CircleMeanResult r = lp_mean({-1.0, 1.0}, e);
      CHECK(r.converged);
      CHECK(r.raw_integral == doctest::Approx(exact).epsilon(1e-10));
    }
  }

  TEST_CASE("kernel integral") {
    CHECK(kernel_integral(1.0, 1, 2.0).raw_integral == doctest::Approx(4.0 * kPi).epsilon(1e-13));
    CHECK(kernel_integral(0.5, 2, 2.0).raw_integral == doctest::Approx(2.0 * kPi * 1.0625).epsilon(1e-13));
    CHECK(kernel_integral(1e-9, 1, 3.0).raw_integral == doctest::Approx(2.0 * kPi).epsilon(1e-8));
    for (double k : {0.3, 0.7, 1.0}) {
      for (int mu : {1, 2, 3}) {
        const double t = std::pow(k, 2 * mu);
        const double exact = 2.0 * kPi * (1.0 + 4.0 * t + t * t);
        CHECK(kernel_integral(k, mu, 4.0).raw_integral == doctest::Approx(exact).epsilon(1e-12));
      }
    }
    CHECK_THROWS(kernel_integral(1.5, 1, 2.0));
    CHECK_THROWS(kernel_integral(0.5, 0, 2.0));
  }

  TEST_CASE("min and max modulus examples") {
    const std::vector<cplx> half{0.5, 0.5};
    CHECK(min_modulus_on_circle(from_zeros(half), 0.5).value == 0.0);
    const ExtremumResult m = min_modulus_on_circle({-0.09, 0.0, 1.0}, 0.5);
    CHECK(m.value == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(std::abs(std::remainder(m.arg_theta, kPi)) < 1e-6);
    CHECK(min_modulus_on_circle(ComplexPoly{cplx{0, -2}}, 0.3).value == doctest::Approx(2.0));
    CHECK(max_modulus_on_circle(ComplexPoly::monomial(5), 0.7).value == doctest::Approx(std::pow(0.7, 5)).epsilon(1e-13));
    const ExtremumResult x = max_modulus_on_circle({0.25, 1.0, 1.0}, 1.0);
    CHECK(x.value == doctest::Approx(2.25).epsilon(1e-13));
    CHECK(std::abs(std::remainder(x.arg_theta, 2.0 * kPi)) < 1e-6);
    CHECK(max_modulus_on_circle({1.0, 0.0, 1.0}, 1.0).value == doctest::Approx(2.0).epsilon(1e-13));
  }

  TEST_CASE("extrema agree with a dense scan and with their own argument") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
      const ComplexPoly p = random_poly(rng, 1 + t % 8);
      const double r = 0.5 + 0.05 * t;
      const ExtremumResult lo = min_modulus_on_circle(p, r);
      const ExtremumResult hi = max_modulus_on_circle(p, r);
      CHECK(lo.value <= hi.value);
      CHECK(std::abs(evaluate(p, std::polar(r, lo.arg_theta))) == doctest::Approx(lo.value).epsilon(1e-10));
      CHECK(std::abs(evaluate(p, std::polar(r, hi.arg_theta))) == doctest::Approx(hi.value).epsilon(1e-10));
      double scan_lo = INFINITY, scan_hi = 0.0;
      for (int j = 0; j < 100000; ++j) {
        const double v = std::abs(evaluate(p, std::polar(r, 2.0 * kPi * j / 100000.0)));
        scan_lo = std::min(scan_lo, v);
        scan_hi = std::max(scan_hi, v);
      }
      CHECK(lo.value <= scan_lo + 1e-12);
      CHECK(hi.value >= scan_hi - 1e-12);
      CHECK(scan_lo - lo.value < 1e-6);
      CHECK(hi.value - scan_hi < 1e-6);
    }
  }

  TEST_CASE("p-means increase towards the maximum") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 5; ++t) {
      const ComplexPoly p = random_poly(rng, 3 + t);
      const double mx = max_modulus_on_circle(p, 1.0).value;
      double prev = 0.0;
      for (int j = 1; j <= 10; ++j) {
        const double e = std::ldexp(1.0, j);
        const CircleMeanResult r = lp_mean(p, e);
        const double normalized = r.mean / std::pow(2.0 * kPi, 1.0 / e);
        CHECK(normalized >= prev * (1.0 - 1e-12));
        CHECK(normalized <= mx * (1.0 + 1e-12));
        prev = normalized;
      }
      CHECK(prev >= 0.98 * mx);
    }
  }

  TEST_CASE("ratio mean") {
    SUBCASE("(z-0.5)^2 reduces to the kernel") {
      const std::vector<cplx> half{0.5, 0.5};
      const CircleMeanResult r = ratio_lp_mean(from_zeros(half), 1.0, 0.0, 0.5, 1, 2.0);
      CHECK(2.0 * 0.5 * r.mean == doctest::Approx(std::sqrt(2.5 * kPi)).epsilon(1e-10));
    }
    SUBCASE("z^n with the min term switched off is constant") {
      // on |z| = 1 the min of |z^n| is 1, so m = 0 has to be forced through RatioTerms
      const int n = 4;
      const double alpha = 3.0;
      const CircleSamples samples(ComplexPoly::monomial(n), 1.0);
      for (double e : {0.5, 2.0}) {
        const CircleMeanResult r = ratio_lp_mean(samples, RatioTerms{alpha, 1.0, 1.0, 1, 0.0}, e);
        CHECK(r.mean == doctest::Approx(std::pow(2.0 * kPi, 1.0 / e) / (n * alpha)).epsilon(1e-12));
      }
      const CircleMeanResult with_m = ratio_lp_mean(ComplexPoly::monomial(n), alpha, 1.0, 1.0, 1, 2.0);
      // |z^n + 1| / (n alpha - n)
      CHECK(with_m.raw_integral == doctest::Approx(4.0 * kPi / std::pow(n * alpha - n, 2)).epsilon(1e-12));
    }
    SUBCASE("beta = 0 and m = 0 is the pointwise quotient") {
      const ComplexPoly p{cplx{0.1, 0.2}, 0.3, 1.0};
      const cplx alpha{2.0, 1.0};
      const ComplexPoly d = polar_derivative(p, alpha);
      const RatioTerms terms{alpha, 0.0, 0.6, 1, 0.0};
      const CircleMeanResult r = ratio_lp_mean(CircleSamples(p, 1.0), terms, 1.0);
      double sum = 0.0;
      const int nodes = 4096;
      for (int j = 0; j < nodes; ++j) {
        const cplx z = std::polar(1.0, 2.0 * kPi * j / nodes);
        sum += std::abs(evaluate(p, z)) / std::abs(evaluate(d, z));
      }
      CHECK(r.raw_integral == doctest::Approx(2.0 * kPi * sum / nodes).epsilon(1e-10));
    }
  }

  TEST_CASE("samples table agrees with direct evaluation") {
    const ComplexPoly p{cplx{0.3, -0.1}, 0.0, 2.0, cplx{0, 1}};
    const CircleSamples table(p, 0.9, 1024);
    const CircleSamples direct(p, 0.9, 0);
    for (std::size_t j = 0; j < 256; ++j) {
      const double theta = 2.0 * kPi * j / 256.0;
      const auto a = table.at(theta, j, 256);
      const auto b = direct.at(theta, j, 256);
      CHECK(std::abs(a.value - b.value) < 1e-13);
      CHECK(std::abs(a.slope - b.slope) < 1e-13);
    }
  }

  TEST_CASE("factored evaluation") {
    const Factorization f{{cplx{1.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 0.5}}, cplx{2.0, -1.0}};
    const ComplexPoly p = from_zeros(f.zeros, f.leading);
    for (cplx z : {cplx{0.3, 0.7}, cplx{-1.0, 0.2}, cplx{0.0, 0.5}, cplx{1.0, 0.0}}) {
      const auto a = evaluate_factored(f, z);
      const auto b = evaluate_with_derivative(p, z);
      CHECK(std::abs(a.value - b.value) < 1e-13);
      CHECK(std::abs(a.slope - b.slope) < 1e-13);
    }
    // at a simple zero the slope is the product of the other factors
    const auto at = evaluate_factored(f, cplx{0.0, 0.5});
    CHECK(at.value == cplx{});
    CHECK(std::abs(at.slope - f.leading * std::pow(cplx{-1.0, 0.5}, 2)) < 1e-15);
  }

  TEST_CASE("factored samples keep relative accuracy next to a multiple zero") {
    const int n = 9;
    const Factorization f{std::vector<cplx>(n, cplx{1.0, 0.0}), 1.0};
    const ComplexPoly p = from_zeros(f.zeros);
    const CircleSamples factored(p, f, 1.0, 0);
    const CircleSamples expanded(p, 1.0, 0);
    const double theta = 1e-3;
    const double exact = std::pow(2.0 * std::sin(theta / 2.0), n);
    const double got = std::abs(factored.at(theta, 0, 0).value);
    CHECK(std::abs(got - exact) <= 1e-13 * exact);
    // the expanded form is rounding noise there
    CHECK(std::abs(std::abs(expanded.at(theta, 0, 0).value) - exact) > exact);
  }

  TEST_CASE("ratio mean for (z-1)^n with known zeros stays bounded") {
    // m = 0 and D_alpha P = n (alpha - 1) (z-1)^{n-1}, so the integrand is
    // |z - 1| / (n (alpha - 1))
    for (int n : {2, 5, 9}) {
      const Factorization f{std::vector<cplx>(n, cplx{1.0, 0.0}), 1.0};
      const ComplexPoly p = from_zeros(f.zeros);
      const CircleSamples samples(p, f, 1.0);
      const double alpha = 2.0;
      for (double e : {0.5, 1.0, 2.0}) {
        const CircleMeanResult r = ratio_lp_mean(samples, RatioTerms{alpha, 0.0, 1.0, 1, 0.0}, e);
        CHECK_FALSE(r.indeterminate);
        CHECK(r.converged);
        // int |z-1|^p = 2^{p+1} sqrt(pi) Gamma((p+1)/2) / Gamma(p/2 + 1)
        const double abs_mean =
            std::pow(2.0, e + 1.0) * std::sqrt(kPi) * std::tgamma((e + 1.0) / 2.0) / std::tgamma(e / 2.0 + 1.0);
        const double expected = std::pow(abs_mean, 1.0 / e) / (n * (alpha - 1.0));
        CHECK(r.mean == doctest::Approx(expected).epsilon(1e-9));
      }
    }
  }
}
