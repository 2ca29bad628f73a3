#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cml/errors.hpp"
#include "cml/weights.hpp"

using namespace cml;

TEST_CASE("test functions and their Mellin transforms") {
  CHECK(test_function(TestKind::Bump, 1.0) == 0.0);
  CHECK(test_function(TestKind::Bump, 1.5) > 0.0);
  for (TestKind k : {TestKind::Bump, TestKind::Smoothstep})
    for (double w : {0.0, 0.5, -0.3}) CHECK(f_check(k, w).real() == doctest::Approx(f_check_simpson(k, w, 4000)).epsilon(1e-9));
  CHECK_THROWS_AS(parse_test_kind("gaussian"), Error);
}

TEST_CASE("Phi1 is the complementary error function") {
  for (double y : {1e-3, 0.02, 0.3, 1.0, 4.0}) {
    CHECK(std::fabs(phi(1, y) - std::erfc(std::sqrt(2 * std::numbers::pi * y))) < 1e-8);
    CHECK(std::fabs(phi_fast(1, y) - phi(1, y)) < 1e-8);
  }
}

TEST_CASE("V_s symmetry and limits") {
  // 1 - V ~ y^{1/2} near 0; polynomial decay at infinity from the poles of G
  const double d6 = std::abs(v_s(0.5, 1e-6) - 1.0), d8 = std::abs(v_s(0.5, 1e-8) - 1.0);
  CHECK(d8 < 1e-3);
  CHECK(d6 / d8 == doctest::Approx(10.0).epsilon(0.2));
  CHECK(std::abs(v_s(0.5, 200.0)) < std::abs(v_s(0.5, 50.0)));
  CHECK(std::abs(v_s(0.5, 50.0)) < 1e-3);
  const cplx a = v_s({0.5, 3.0}, 2.0), b = v_s({0.5, -3.0}, 2.0);
  CHECK(std::abs(a - std::conj(b)) < 1e-10);
}

TEST_CASE("Bessel transform") {
  CHECK(v_ddot(TestKind::Bump, 0.0) == doctest::Approx(0.5 * f_check(TestKind::Bump, 0.0).real()).epsilon(1e-10));
  for (double u : {3.0, 50.0, 200.0}) CHECK(std::fabs(v_ddot(TestKind::Bump, u) - v_ddot_fixed(TestKind::Bump, u, 400)) < 1e-13);
  CHECK(std::fabs(v_ddot(TestKind::Bump, 800.0)) < 1e-12);
}
