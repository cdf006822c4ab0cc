#include <doctest.h>

#include <cmath>

#include "polarlp/certificate.hpp"

using namespace polarlp;

TEST_SUITE("certificate") {
  TEST_CASE("verdicts") {
    const CheckerId id = CheckerId::turan;
    CHECK(certify(id, 1.0, 2.0, 0.0, {}).verdict == Verdict::holds);
    CHECK(certify(id, 2.0, 2.0 + 1e-9, 0.0, {}).verdict == Verdict::equality);
    CHECK(certify(id, 2.0 + 1e-9, 2.0, 0.0, {}).verdict == Verdict::equality);
    CHECK(certify(id, 2.0, 1.0, 0.0, {}).verdict == Verdict::violated);
    CHECK(certify(id, 2.0, 1.99, 0.001, {}).verdict == Verdict::violated);
    // between the equality band and the violation threshold
    CHECK(certify(id, 2.0, 1.993, 0.006, {}, false, false, 1e-3).verdict == Verdict::violated_within_error);
    CHECK(certify(id, 2.0, 1.99, 0.0125, {}).verdict == Verdict::equality);
    CHECK(certify(id, 2.0, 1.999, 0.01, {}, true).verdict == Verdict::indeterminate);
    CHECK(certify(id, 1.0, 2.0, 0.01, {}, true).verdict == Verdict::holds);
    CHECK(certify(id, NAN, 2.0, 0.0, {}).verdict == Verdict::indeterminate);
    CHECK(certify(id, 1.0, 2.0, 0.0, {}, false, true).verdict == Verdict::indeterminate);
  }

  TEST_CASE("slack fields") {
    const auto c = certify(CheckerId::bernstein, 1.0, 4.0, 0.5, {.k = 0.5}, true);
    CHECK(c.slack == 3.0);
    CHECK(c.rel_slack == 0.75);
    CHECK(c.error_budget == 5.0);
    CHECK(c.params.k == 0.5);
    CHECK(certify(CheckerId::bernstein, 0.0, 0.0, 0.0, {}).rel_slack == 0.0);
  }

  TEST_CASE("rejection") {
    const auto c = reject(CheckerId::aziz_lp, {}, "k must lie in (0, 1]");
    CHECK(c.verdict == Verdict::rejected);
    CHECK(std::isnan(c.lhs));
    CHECK(c.note == "k must lie in (0, 1]");
  }

  TEST_CASE("names round trip") {
    for (CheckerId id : kAllCheckers) CHECK(checker_from_string(to_string(id)) == id);
    CHECK_FALSE(checker_from_string("nope").has_value());
    CHECK(to_string(Verdict::violated_within_error) == "violated_within_error");
  }
}
