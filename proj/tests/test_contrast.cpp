#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "prolsm/contrast.hpp"
#include "prolsm/errors.hpp"
#include "prolsm/forward.hpp"

using namespace prolsm;

namespace {

std::vector<ContrastProfile> builtins(double r) {
  return {ContrastProfile::constant(r), ContrastProfile::inc_dec(r), ContrastProfile::dec_inc(r),
          ContrastProfile::oscillatory(r, 4)};
}

} // namespace

TEST_CASE("closed-form profile values") {
  const double r = 0.66;
  CHECK(contrast_eval(ContrastProfile::constant(r), 0.0) == doctest::Approx(1.32));
  CHECK(contrast_eval(ContrastProfile::inc_dec(r), 0.66) == 0.0);
  CHECK(contrast_eval(ContrastProfile::inc_dec(r), -0.66) == 0.0);
  CHECK(contrast_eval(ContrastProfile::oscillatory(r, 4), 0.0) == doctest::Approx(0.165));
  CHECK(contrast_eval(ContrastProfile::dec_inc(r), 0.5) == doctest::Approx(0.5 * r + 0.25));
  for (const auto &q : builtins(r)) {
    CHECK(contrast_eval(q, 0.7) == 0.0);
    CHECK(contrast_eval(q, -0.9) == 0.0);
    // the piece representation agrees with the closed form
    for (double s = -0.65; s < 0.65; s += 0.013) {
      double v = 0.0;
      for (const auto &p : q.pieces)
        if (p.lo <= s && s < p.hi)
          v = p.value(s);
      CHECK(v == doctest::Approx(contrast_eval(q, s)).epsilon(1e-13));
    }
  }
}

TEST_CASE("two-component and piecewise profiles") {
  const auto q = ContrastProfile::two_component(0.66, 0.04);
  CHECK(contrast_eval(q, 0.0) == 0.0);
  CHECK(contrast_eval(q, 0.03) == doctest::Approx(1.32));
  CHECK(contrast_eval(q, -0.5) == doctest::Approx(1.32));
  CHECK(contrast_eval(q, 0.7) == 0.0);
  CHECK_THROWS_AS(ContrastProfile::two_component(0.66, 1.4), InputError);
  CHECK_THROWS_AS(ContrastProfile::constant(1.2), InputError);
  CHECK_THROWS_AS(ContrastProfile::piecewise({{0.1, 0.0, 1.0}}), InputError);
  CHECK_THROWS_AS(ContrastProfile::piecewise({{-0.5, 0.2, 1.0}, {0.1, 0.4, 1.0}}), InputError);
  CHECK_THROWS_AS(ContrastProfile::piecewise({{-1.5, 0.2, 1.0}}), InputError);
  CHECK_THROWS_AS(profile_kind_from_string("triangle"), InputError);
  CHECK(profile_kind_from_string("inc_dec") == ProfileKind::IncDec);
}

TEST_CASE("background shift") {
  const auto q = ContrastProfile::oscillatory(0.6, 2);
  const auto t = q.plus_background(1.0, 0.8);
  CHECK(t.kind == ProfileKind::Piecewise);
  for (double s = -0.95; s < 0.95; s += 0.0123)
    CHECK(contrast_eval(t, s) ==
          doctest::Approx(contrast_eval(q, s) + (std::abs(s) < 0.8 ? 1.0 : 0.0)).epsilon(1e-13));
  for (double w : {0.0, 3.0, 17.5, -40.0})
    CHECK(std::abs(fourier_transform(t, w) - fourier_transform(q, w) -
                   fourier_transform(ContrastProfile::background(1.0, 0.8), w)) < 1e-13);
}

TEST_CASE("forward data: closed forms against quadrature") {
  const double r = 0.66;
  CHECK(forward_data(ContrastProfile::constant(r), 20.0, 0.0).real() == doctest::Approx(4 * r * r));
  CHECK(forward_data(ContrastProfile::inc_dec(r), 20.0, 0.0).real() == doctest::Approx(2 * r * r));
  const double c = 20.0, t = 0.1;
  const cplx u = forward_data(ContrastProfile::constant(r), c, t);
  CHECK(std::abs(u - 2 * r * std::sin(2 * c * t * r) / (c * t)) < 1e-13);
  CHECK(std::abs(u - oracle::forward_data_quadrature(ContrastProfile::constant(r), c, t)) < 1e-10);

  auto profiles = builtins(r);
  profiles.push_back(ContrastProfile::two_component(r, 0.08));
  profiles.push_back(ContrastProfile::piecewise({{-0.4, 0.1, 0.3, 0.7, 0.2, 9.0}, {0.2, 0.5, 1.0}}));
  profiles.push_back(ContrastProfile::oscillatory(r, 4).plus_background(0.5, 0.8));
  for (const auto &q : profiles)
    for (double tt = -1.0; tt <= 1.0; tt += 0.05)
      for (double cc : {3.0, 20.0, 100.0}) {
        CAPTURE(to_string(q.kind));
        CAPTURE(tt);
        CHECK(std::abs(forward_data(q, cc, tt) - oracle::forward_data_quadrature(q, cc, tt)) < 1e-10);
      }
}

TEST_CASE("built-in transforms equal the generic piece formula") {
  for (const auto &q : builtins(0.66)) {
    const auto generic = ContrastProfile::piecewise(q.pieces);
    for (double w : {0.0, 1e-9, 1e-3, 0.7, 5.0, 33.3, -80.0, 200.0})
      CHECK(std::abs(fourier_transform(q, w) - fourier_transform(generic, w)) < 1e-13);
  }
  // real for even profiles
  for (const auto &q : builtins(0.5))
    CHECK(std::abs(fourier_transform(q, 12.3).imag()) < 1e-15);
}

TEST_CASE("harmonic average reference") {
  const double r = 0.66;
  CHECK(*harmonic_average(ContrastProfile::constant(r), 0.2, 0.3) == doctest::Approx(2 * r).epsilon(1e-14));
  const auto h = harmonic_average(ContrastProfile::inc_dec(r), -0.05, 0.05);
  REQUIRE(h);
  CHECK(*h < 2 * r);
  const double quad = 0.1 / oracle::integrate_over_support(ContrastProfile::piecewise({{-0.05, 0.05, 1.0}}), [&](double s) {
                              return 1.0 / contrast_eval(ContrastProfile::inc_dec(r), s);
                            }).real();
  CHECK(*h == doctest::Approx(quad).epsilon(1e-12));

  const auto osc = ContrastProfile::oscillatory(r, 4);
  const auto ho = harmonic_average(osc, 0.1, 0.2);
  REQUIRE(ho);
  const double quado = 0.1 / oracle::integrate_over_support(ContrastProfile::piecewise({{0.1, 0.2, 1.0}}), [&](double s) {
                               return 1.0 / contrast_eval(osc, s);
                             }).real();
  CHECK(*ho == doctest::Approx(quado).epsilon(1e-12));

  CHECK_FALSE(harmonic_average(ContrastProfile::constant(r), 0.6, 0.7));   // leaves support
  CHECK_FALSE(harmonic_average(ContrastProfile::inc_dec(r), 0.6, 0.66));   // touches zero
  CHECK_FALSE(harmonic_average(ContrastProfile::two_component(r, 0.1), -0.1, 0.1));
  const auto sign = ContrastProfile::piecewise({{-0.6, 0.6, 0.0, 0.0, 0.5, 2 * std::numbers::pi / 0.6}});
  CHECK_FALSE(harmonic_average(sign, -0.2, 0.2));
  CHECK(harmonic_average(sign.plus_background(1.0, 0.8), -0.2, 0.2));
}
