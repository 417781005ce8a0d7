#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "prolsm/errors.hpp"
#include "prolsm/quadrature.hpp"

using namespace prolsm;

TEST_CASE("legendre values from the recurrence") {
  CHECK(legendre(2, 0.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(legendre(5, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(legendre(3, 0.5) == doctest::Approx(-0.4375).epsilon(1e-15));
  CHECK(legendre(0, 0.3) == 1.0);
  for (int n = 0; n < 40; ++n)
    for (double x = -1.0; x <= 1.0; x += 0.01)
      CHECK(std::abs(legendre(n, x)) <= 1.0 + 1e-14);
}

TEST_CASE("legendre derivative") {
  CHECK(legendre_deriv(1, 0.3) == doctest::Approx(1.0));
  CHECK(std::abs(legendre_deriv(2, 0.0)) < 1e-15);
  const double fd = oracle::central_difference([](double x) { return legendre(4, x); }, 0.5);
  CHECK(std::abs(legendre_deriv(4, 0.5) - fd) < 1e-8);
  // Bonnet relation (1 - x^2) P'_n = n (P_{n-1} - x P_n) at interior points
  for (int n = 1; n < 30; ++n)
    for (double x : {-0.9, -0.4, 0.1, 0.77}) {
      const double lhs = (1 - x * x) * legendre_deriv(n, x);
      const double rhs = n * (legendre(n - 1, x) - x * legendre(n, x));
      CHECK(std::abs(lhs - rhs) < 1e-12 * n * n);
    }
  // endpoints: P'_n(1) = n(n+1)/2
  CHECK(legendre_deriv(7, 1.0) == doctest::Approx(28.0).epsilon(1e-14));
}

TEST_CASE("normalized legendre") {
  CHECK(normalized_legendre(0, 0.123) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(normalized_legendre(1, 1.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  std::vector<double> table(12);
  normalized_legendre_table(0.37, table);
  for (int n = 0; n < 12; ++n)
    CHECK(table[n] == doctest::Approx(normalized_legendre(n, 0.37)).epsilon(1e-14));

  const auto rule = lgl_rule(30);
  double worst = 0.0;
  for (int m = 0; m < 10; ++m)
    for (int n = 0; n < 10; ++n) {
      const double g =
          integrate([&](double x) { return normalized_legendre(m, x) * normalized_legendre(n, x); }, -1, 1, rule)
              .real();
      worst = std::max(worst, std::abs(g - (m == n ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("small LGL rules match hand values") {
  const auto r2 = lgl_rule(2);
  CHECK(r2.nodes == std::vector<double>{-1.0, 1.0});
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  const auto r3 = lgl_rule(3);
  CHECK(r3.nodes[0] == -1.0);
  CHECK(r3.nodes[1] == 0.0);
  CHECK(r3.nodes[2] == 1.0);
  CHECK(r3.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r3.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(r3.weights[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(integrate([](double x) { return x * x; }, -1, 1, r3).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r3.exactness() == 3);
}

TEST_CASE("LGL invariants for N_q = 2..60") {
  for (int nq = 2; nq <= 60; ++nq) {
    CAPTURE(nq);
    const auto rule = lgl_rule(nq);
    REQUIRE(rule.order() == nq);
    CHECK(rule.nodes.front() == -1.0);
    CHECK(rule.nodes.back() == 1.0);
    double wsum = 0.0;
    for (int j = 0; j < nq; ++j) {
      CHECK(rule.weights[j] > 0.0);
      wsum += rule.weights[j];
      if (j > 0)
        CHECK(rule.nodes[j] > rule.nodes[j - 1]);
      CHECK(std::abs(rule.nodes[j] + rule.nodes[nq - 1 - j]) < 1e-14);
    }
    CHECK(std::abs(wsum - 2.0) < 1e-13);
    // interior nodes are roots of P'_{nq-1}
    for (int j = 1; j + 1 < nq; ++j)
      CHECK(std::abs(legendre_deriv(nq - 1, rule.nodes[j])) < 1e-10 * nq * nq);
  }
}

TEST_CASE("LGL exactness sweep") {
  double worst = 0.0;
  for (int nq = 2; nq <= 60; ++nq) {
    const auto rule = lgl_rule(nq);
    for (int k = 0; k <= rule.exactness(); ++k) {
      double s = 0.0;
      for (int j = 0; j < nq; ++j)
        s += rule.weights[j] * std::pow(rule.nodes[j], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      worst = std::max(worst, std::abs(s - exact));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("integrate maps the rule onto [a, b]") {
  const auto rule = lgl_rule(7);
  CHECK(integrate([](double) { return 1.0; }, -1, 1, rule).real() == doctest::Approx(2.0).epsilon(1e-14));
  const double z = 0.3, eps = 0.05;
  CHECK(integrate([](double) { return 1.0; }, z - eps, z + eps, rule).real() ==
        doctest::Approx(2 * eps).epsilon(1e-14));
  CHECK(integrate([](double x) { return x; }, 0, 1, lgl_rule(4)).real() == doctest::Approx(0.5).epsilon(1e-14));
  const auto m = rule.mapped(0.0, 2.0);
  CHECK(m.nodes.front() == 0.0);
  CHECK(m.nodes.back() == 2.0);
}

TEST_CASE("degenerate inputs are rejected") {
  const auto rule = lgl_rule(4);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.5, 0.5, rule), InputError);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.6, 0.5, rule), InputError);
  CHECK_THROWS_AS(lgl_rule(1), InputError);
  CHECK_THROWS_AS(rule.mapped(1.0, 0.0), InputError);
}
