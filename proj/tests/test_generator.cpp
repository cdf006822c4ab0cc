#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "polarlp/circle.hpp"
#include "polarlp/generator.hpp"
#include "polarlp/roots.hpp"

using namespace polarlp;

TEST_SUITE("generator") {
  TEST_CASE("random_in_disk is deterministic and valid") {
    GeneratorConfig cfg;
    cfg.seed = 42;
    cfg.count = 3;
    cfg.k_values = {0.3, 0.6, 0.9};
    const auto a = random_in_disk(cfg);
    const auto b = random_in_disk(cfg);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].id == b[i].id);
      CHECK(a[i].poly == b[i].poly);
      CHECK_FALSE(validation_error(a[i]).has_value());
      for (const cplx& z : a[i].zeros) CHECK(std::abs(z) <= a[i].k * (1.0 - cfg.interior_margin) * (1 + 1e-15));
      CHECK(std::abs(a[i].leading) >= 0.5);
      CHECK(std::abs(a[i].leading) <= 2.0);
    }
    cfg.seed = 43;
    CHECK_FALSE(random_in_disk(cfg)[0].poly == a[0].poly);
  }

  TEST_CASE("zeros stay off the circle with the default margin") {
    GeneratorConfig cfg;
    cfg.count = 40;
    cfg.k_values = {0.5, 1.0};
    for (const auto& s : random_in_disk(cfg)) CHECK(min_modulus_on_circle(s.poly, s.k).value > 0.0);
  }

  TEST_CASE("explicit lacunary instance") {
    const InstanceSpec s = lacunary_instance("ex", 4, 2, {0.09, 0.16}, 1.0, 0.6);
    const ComplexPoly expected{0.0144, 0.0, -0.25, 0.0, 1.0};
    for (int j = 0; j <= 4; ++j) CHECK(std::abs(s.poly[j] - expected[j]) < 1e-15);
    CHECK(lacunary_gap(s.poly) == 2);
    CHECK(s.poly[1] == cplx{});
    CHECK(s.poly[3] == cplx{});
    std::vector<double> moduli;
    for (const cplx& z : s.zeros) moduli.push_back(std::abs(z));
    std::sort(moduli.begin(), moduli.end());
    CHECK(moduli[0] == doctest::Approx(0.3));
    CHECK(moduli[3] == doctest::Approx(0.4));
  }

  TEST_CASE("lacunary families have an honest gap") {
    GeneratorConfig cfg;
    cfg.count = 6;
    cfg.k_values = {0.3, 0.6, 0.9, 1.0};
    for (int n = 1; n <= 10; ++n) {
      for (int mu = 1; mu <= n; ++mu) {
        const auto family = lacunary_family(n, mu, cfg);
        for (const auto& s : family) {
          CHECK(s.degree() == n);
          CHECK(lacunary_gap(s.poly) >= mu);
          for (int j = 1; j < mu; ++j) CHECK(s.poly[n - j] == cplx{});
          const ZeroModulus zm = max_zero_modulus(s.poly);
          CHECK(zm.ok);
          CHECK(zm.value <= s.k * (1 + 1e-8));
        }
        if (mu == n) CHECK(family[0].poly.coeffs().size() == static_cast<std::size_t>(n + 1));
      }
    }
    CHECK(lacunary_family(6, 2, cfg)[3].poly == lacunary_family(6, 2, cfg)[3].poly);
    CHECK_THROWS(lacunary_family(3, 4, cfg));
  }

  TEST_CASE("extremal catalog") {
    const Catalog half = extremal_catalog(0.5, 2);
    REQUIRE(half.instances.size() == 3);
    CHECK(half.instances[0].poly == ComplexPoly{0.25, -1.0, 1.0});
    CHECK(half.instances[1].poly == ComplexPoly{0.25, 1.0, 1.0});
    CHECK(half.instances[2].poly == ComplexPoly::monomial(2));
    CHECK(half.notes.size() == 1);

    const Catalog one = extremal_catalog(1.0, 2);
    REQUIRE(one.instances.size() == 4);
    CHECK(one.instances[3].poly == ComplexPoly{1.0, 0.0, 1.0});
    CHECK(one.notes.empty());

    const Catalog lin = extremal_catalog(0.25, 1);
    CHECK(lin.instances[0].poly == ComplexPoly{-0.25, 1.0});
    CHECK_THROWS(extremal_catalog(0.0, 2));
  }

  TEST_CASE("bad configs are rejected") {
    GeneratorConfig cfg;
    cfg.k_values = {};
    CHECK_THROWS(random_in_disk(cfg));
    cfg.k_values = {1.2};
    CHECK_THROWS(random_in_disk(cfg));
    cfg.k_values = {0.5};
    cfg.interior_margin = 1.0;
    CHECK_THROWS(random_in_disk(cfg));
  }

  TEST_CASE("portable rng") {
    PortableRng a(7), b(7);
    for (int i = 0; i < 100; ++i) {
      const double x = a.uniform();
      CHECK(x == b.uniform());
      CHECK(x >= 0.0);
      CHECK(x < 1.0);
      const int j = a.integer(2, 5);
      CHECK(j == b.integer(2, 5));
      CHECK(j >= 2);
      CHECK(j <= 5);
    }
  }
}
