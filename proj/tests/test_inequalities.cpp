#include <doctest.h>

#include <cmath>

#include "polarlp/generator.hpp"
#include "polarlp/inequalities.hpp"

using namespace polarlp;

namespace {

constexpr double kPi = M_PI;

Subject power_of(double root, int n) {
  const std::vector<cplx> zs(n, cplx{root, 0.0});
  return Subject(from_zeros(zs));
}

bool sound(const InequalityCertificate& c) { return c.verdict == Verdict::holds || c.verdict == Verdict::equality; }

double ratio(const InequalityCertificate& c) { return c.lhs / c.rhs; }

const ComplexPoly kLacunary{0.002, 0.0, 0.1, 0.0, 1.0};

std::vector<InstanceSpec> sample_instances() {
  GeneratorConfig cfg;
  cfg.seed = 5;
  cfg.count = 8;
  cfg.n_min = 2;
  cfg.n_max = 7;
  cfg.k_values = {0.3, 0.6, 0.9, 1.0};
  auto out = random_in_disk(cfg);
  for (auto& s : lacunary_family(6, 2, cfg)) out.push_back(std::move(s));
  cfg.count = 4;
  for (auto& s : lacunary_family(7, 3, cfg)) out.push_back(std::move(s));
  return out;
}

}  // namespace

TEST_SUITE("inequalities") {
  TEST_CASE("max-norm inequalities on their examples") {
    const auto b = check_bernstein(Subject(ComplexPoly::monomial(4)));
    CHECK(b.verdict == Verdict::equality);
    const auto b1 = check_bernstein(Subject(ComplexPoly{1.0, 1.0}));
    CHECK(b1.lhs == doctest::Approx(1.0));
    CHECK(b1.rhs == doctest::Approx(2.0));
    CHECK(b1.verdict == Verdict::holds);
    CHECK(check_bernstein(Subject(ComplexPoly{2.0})).verdict == Verdict::rejected);

    const auto t = check_turan(Subject(ComplexPoly{1.0, 0.0, 1.0}));
    CHECK(t.lhs == doctest::Approx(4.0));
    CHECK(t.rhs == doctest::Approx(4.0));
    CHECK(t.verdict == Verdict::equality);
    const auto t5 = check_turan(Subject(ComplexPoly::monomial(5)));
    CHECK(t5.lhs == doctest::Approx(5.0));
    CHECK(t5.rhs == doctest::Approx(10.0));
    CHECK(check_turan(Subject(ComplexPoly{-0.25, 0.0, 1.0})).verdict == Verdict::holds);
    CHECK(check_turan(Subject(ComplexPoly{-4.0, 0.0, 1.0})).verdict == Verdict::rejected);

    const auto m = check_malik_max(power_of(-0.5, 2), 0.5);
    CHECK(m.lhs == doctest::Approx(4.5));
    CHECK(m.rhs == doctest::Approx(4.5));
    CHECK(m.verdict == Verdict::equality);
    const Subject s(ComplexPoly{cplx{0.1, 0.05}, -0.3, 0.2, 1.0});
    CHECK(check_malik_max(s, 1.0).slack == doctest::Approx(check_turan(s).slack));
    CHECK(check_malik_max(s, 1.5).verdict == Verdict::rejected);

    const Subject lac(kLacunary);
    CHECK(lac.gap() == 2);
    CHECK(check_aziz_shah(lac, 0.6, 2).verdict == Verdict::holds);
    CHECK(sound(check_aziz_shah(Subject(ComplexPoly::monomial(3)), 0.05, 3)));
    CHECK(check_aziz_shah(lac, 0.6, 3).verdict == Verdict::rejected);
  }

  TEST_CASE("the min-|P'| form of aziz_shah fails on z^n") {
    const Subject s(ComplexPoly::monomial(5));
    CheckOptions literal;
    literal.aziz_shah_derivative_min = true;
    CHECK(check_aziz_shah(s, 0.9, 5, literal).verdict == Verdict::violated);
    CHECK(check_aziz_shah(s, 0.9, 5).verdict == Verdict::equality);
  }

  TEST_CASE("polar max-norm forms") {
    const Subject s = power_of(-0.5, 2);
    CHECK(check_polar_max(s, 0.5, 2.0).verdict == Verdict::holds);
    const auto edge = check_polar_max(s, 0.5, 0.5);
    CHECK(edge.lhs == 0.0);
    CHECK(edge.verdict == Verdict::holds);
    CHECK(check_polar_max(s, 0.5, 0.4).verdict == Verdict::rejected);

    // divided by |alpha| the ratio tends to the malik_max ratio
    const auto far = check_polar_max(s, 0.5, 1e7);
    CHECK(ratio(far) == doctest::Approx(ratio(check_malik_max(s, 0.5))).epsilon(1e-6));

    const Subject lac(kLacunary);
    const auto e = check_polar_lacunary_max(lac, 0.6, 2, 0.36);
    CHECK(e.lhs == 0.0);
    CHECK(check_polar_lacunary_max(lac, 0.6, 2, 1.0).verdict == Verdict::holds);
    CHECK(check_polar_lacunary_max(s, 0.5, 1, 2.0).slack == doctest::Approx(check_polar_max(s, 0.5, 2.0).slack));
    CHECK(sound(check_polar_lacunary_min(power_of(0.5, 3), 0.5, 1, 1.0)));
    CHECK(sound(check_polar_lacunary_min(lac, 0.6, 2, 1.0)));
  }

  TEST_CASE("L_p forms of the max-norm inequalities") {
    const auto eq = check_malik_lp(Subject(ComplexPoly{1.0, 1.0}), 2.0);
    CHECK(eq.lhs == doctest::Approx(std::sqrt(4.0 * kPi)).epsilon(1e-12));
    CHECK(eq.verdict == Verdict::equality);
    const auto zn = check_malik_lp(Subject(ComplexPoly::monomial(3)), 2.0);
    CHECK(zn.lhs == doctest::Approx(3.0 * std::sqrt(2.0 * kPi)).epsilon(1e-12));
    CHECK(zn.rhs == doctest::Approx(3.0 * std::sqrt(4.0 * kPi)).epsilon(1e-12));
    CHECK(zn.verdict == Verdict::holds);

    const Subject s(ComplexPoly{cplx{0.1, 0.05}, -0.3, 0.2, 1.0});
    CHECK(ratio(check_malik_lp(s, 1024.0)) == doctest::Approx(ratio(check_turan(s))).epsilon(0.02));
    const auto a1 = check_aziz_lp(s, 1.0, 1.5);
    const auto m1 = check_malik_lp(s, 1.5);
    CHECK(a1.lhs == m1.lhs);
    CHECK(a1.rhs == m1.rhs);
    const Subject z2 = power_of(-0.5, 2);
    CHECK(ratio(check_aziz_lp(z2, 0.5, 1024.0)) == doctest::Approx(ratio(check_malik_max(z2, 0.5))).epsilon(0.02));
    CHECK(check_aziz_lp(z2, 0.5, 0.0).verdict == Verdict::rejected);
  }

  TEST_CASE("ratio form is sharp on (z-k)^n") {
    const Subject s = power_of(0.5, 2);
    for (cplx beta : {cplx{0}, cplx{1}, cplx{0, 1}}) {
      const auto c = check_ratio_mean(s, 0.5, 1.0, beta, 2.0);
      CHECK(c.verdict == Verdict::equality);
      CHECK(c.rhs == doctest::Approx(std::sqrt(2.5 * kPi)).epsilon(1e-12));
      CHECK(std::abs(c.slack) <= 1e-8 * c.rhs);
    }
    CHECK(check_ratio_mean(s, 0.5, 0.5, 1.0, 2.0).lhs == 0.0);
    CHECK(check_ratio_mean(s, 0.5, 1.0, 1.1, 2.0).verdict == Verdict::rejected);
  }

  TEST_CASE("reductions between the L_p checkers") {
    for (const auto& inst : sample_instances()) {
      const Subject s(inst);
      const double k = inst.k;
      const int mu = inst.mu;
      const cplx alpha = std::polar(1.0 + k, 0.7);
      CAPTURE(inst.id);

      const auto sp = check_shifted_polar_mean(s, k, alpha, 0.0, 1.5);
      const auto pl = check_polar_lp(s, k, alpha, 1.5);
      CHECK(sp.lhs == doctest::Approx(pl.lhs).epsilon(1e-12));
      CHECK(sp.rhs == doctest::Approx(pl.rhs).epsilon(1e-12));

      const auto sd = check_shifted_derivative_mean(s, k, 0.0, 2.0);
      const auto az = check_aziz_lp(s, k, 2.0);
      CHECK(sd.lhs == doctest::Approx(az.lhs).epsilon(1e-12));

      const auto t2 = check_lacunary_ratio_mean(s, k, 1, alpha, cplx{0, 1}, 1.0);
      const auto t1 = check_ratio_mean(s, k, alpha, cplx{0, 1}, 1.0);
      CHECK(std::abs(t2.lhs - t1.lhs) <= 1e-10 * t1.lhs);
      CHECK(std::abs(t2.rhs - t1.rhs) <= 1e-10 * t1.rhs);

      const auto c3 = check_lacunary_shifted_mean(s, k, mu, alpha, 0.0, 3.0);
      const auto l10 = check_polar_lacunary_lp(s, k, mu, alpha, 3.0);
      CHECK(c3.lhs == doctest::Approx(l10.lhs).epsilon(1e-12));
      CHECK(c3.rhs == doctest::Approx(l10.rhs).epsilon(1e-12));
    }
  }

  TEST_CASE("holder split") {
    const Subject lac(kLacunary);
    const auto c = check_holder_split(lac, 0.6, 2, 1.0, 0.5, 2.0, 2.0, 2.0);
    CHECK(c.verdict == Verdict::holds);
    CHECK(check_holder_split(lac, 0.6, 2, 0.36, 0.5, 2.0, 2.0, 2.0).lhs == 0.0);
    CHECK(check_holder_split(lac, 0.6, 2, 1.0, 0.5, 2.0, 2.0, 3.0).verdict == Verdict::rejected);
    CHECK(check_holder_split(lac, 0.6, 2, 1.0, 0.5, 2.0, 64.0 / 63.0, 64.0).verdict == Verdict::holds);
  }

  TEST_CASE("pointwise bounds") {
    const auto eq = check_reciprocal_derivative(power_of(0.5, 2), 0.5, 1);
    CHECK(eq.verdict == Verdict::equality);
    // z^n: Q' = 0 and m = k^n, so both sides are n k^n
    const auto zn = check_reciprocal_derivative(Subject(ComplexPoly::monomial(4)), 0.7, 4);
    CHECK(zn.verdict == Verdict::equality);
    CHECK(zn.rhs == doctest::Approx(4.0 * std::pow(0.7, 4)));
    CheckOptions unit;
    unit.reciprocal_min = MinCircle::unit;
    CHECK(check_reciprocal_derivative(power_of(0.5, 3), 0.5, 1, unit).verdict == Verdict::violated);

    for (const auto& inst : sample_instances()) {
      const Subject s(inst);
      CAPTURE(inst.id);
      CHECK(sound(check_reciprocal_derivative(s, inst.k, inst.mu)));
      CHECK(sound(check_pointwise_chain(s, inst.k, inst.mu, 1.0, std::polar(1.0, 2.0))));
    }
  }

  TEST_CASE("subordination witness") {
    for (double k : {0.5, 0.9}) {
      const WitnessTrace w = subordination_witness(power_of(k, 4), k, 1, 0.0);
      CHECK_FALSE(w.partial);
      for (const cplx& v : w.w_values) CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-10));
    }
    for (const auto& inst : sample_instances()) {
      const Subject s(inst);
      CAPTURE(inst.id);
      const WitnessTrace w = subordination_witness(s, inst.k, inst.mu, cplx{0.6, 0.8});
      CHECK(w.max_abs_w <= 1.0 + 1e-8);
      CHECK(std::abs(w.w_at_zero) <= 1e-8);
      CHECK(w.identity_max_rel_dev <= 1e-9);
      REQUIRE(w.mean_comparisons.size() == 4);
      for (const auto& mc : w.mean_comparisons) CHECK(mc.holds);
    }
  }

  TEST_CASE("verdicts do not change when P is scaled") {
    const auto instances = sample_instances();
    for (std::size_t i = 0; i < instances.size(); i += 3) {
      const auto& inst = instances[i];
      const Subject a(inst.poly);
      const Subject b(inst.poly * cplx{-3.0, 4.0});
      const Subject c(inst.poly * 2.5);
      const double k = inst.k;
      const cplx alpha = 2.0;
      CHECK(check_malik_max(a, k).verdict == check_malik_max(b, k).verdict);
      CHECK(check_polar_lp(a, k, alpha, 2.0).verdict == check_polar_lp(b, k, alpha, 2.0).verdict);
      const auto ra = check_ratio_mean(a, k, alpha, 1.0, 1.0);
      const auto rb = check_ratio_mean(b, k, alpha, 1.0, 1.0);
      CHECK(ra.verdict == rb.verdict);
      // a complex factor rotates the effective beta, a positive one leaves the ratio alone
      CHECK(ra.lhs == doctest::Approx(check_ratio_mean(c, k, alpha, 1.0, 1.0).lhs).epsilon(1e-10));
    }
  }

  TEST_CASE("common preconditions") {
    const Subject s(kLacunary);
    CHECK(check_ratio_mean(s, 0.0, 1.0, 0.0, 1.0).verdict == Verdict::rejected);
    CHECK(check_ratio_mean(s, 0.1, 1.0, 0.0, 1.0).verdict == Verdict::rejected);
    CHECK(check_lacunary_ratio_mean(s, 0.6, 2, 0.3, 0.0, 1.0).verdict == Verdict::rejected);
    CHECK(check_polar_lp(s, 0.6, 1.0, -1.0).verdict == Verdict::rejected);
    CHECK_THROWS(subordination_witness(Subject(ComplexPoly{1.0}), 0.5, 1, 0.0));
  }

  TEST_CASE("pointwise equalities survive rounding near the zeros") {
    // Both pointwise bounds are equalities for (z + k)^n; near z = -1 the two
    // sides are tiny and Horner noise alone would flip the sign.
    for (double k : {0.9, 1.0}) {
      for (int n : {5, 9}) {
        const auto inst = extremal_catalog(k, n).instances;
        for (const auto& i : inst) {
          const Subject s(i);
          CHECK(sound(check_reciprocal_derivative(s, k, i.mu)));
          for (cplx beta : {cplx{0.0}, cplx{1.0}, cplx{0.0, 1.0}}) {
            CHECK(sound(check_pointwise_chain(s, k, i.mu, 1.0 + k, beta)));
          }
        }
      }
    }
  }

  TEST_CASE("witness at a zero on the circle with m = 0") {
    // Q = (1 - z)^n, so w = -z exactly; numerator and denominator of w both
    // vanish to order n - 1 at z = 1.
    for (int n : {2, 5, 9}) {
      const Subject s(make_instance("(z-1)^n", std::vector<cplx>(n, cplx{1.0, 0.0}), 1.0, 1.0));
      const WitnessTrace t = subordination_witness(s, 1.0, 1, 0.0);
      CHECK_FALSE(t.partial);
      CHECK(t.max_abs_w <= 1.0 + 1e-12);
      for (std::size_t j = 0; j < t.theta_grid.size(); ++j) {
        CHECK(std::abs(t.w_values[j] + std::polar(1.0, t.theta_grid[j])) < 1e-12);
      }
      for (const auto& mc : t.mean_comparisons) {
        CHECK(mc.holds);
        CHECK(mc.witness.raw_integral == doctest::Approx(mc.kernel.raw_integral).epsilon(1e-9));
      }
    }
  }
}
