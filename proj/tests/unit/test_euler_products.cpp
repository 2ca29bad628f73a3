#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cml/euler_products.hpp"
#include "cml/special.hpp"

using namespace cml;

TEST_CASE("Dedekind zeta factors") {
  CHECK(zeta_K(2) == doctest::Approx(riemann_zeta(2) * dirichlet_l_minus3(2)).epsilon(1e-13));
  CHECK(zeta_K(2) == doctest::Approx(1.285190955484149).epsilon(1e-12));
  CHECK(zeta_lambda_residue_extrapolated() == doctest::Approx(zeta_lambda_residue()).epsilon(1e-6));
}

TEST_CASE("local factors") {
  CHECK(mult_fn(MultFn::r, 4) == doctest::Approx(32.0 / 39));
  CHECK(mult_fn(MultFn::h, 4) == doctest::Approx(64.0 / 55));
  CHECK_THROWS_AS(mult_fn(MultFn::r, 3), Error);
}

TEST_CASE("constants converge") {
  const double c1 = constant(ConstantName::C, 100000).value, c2 = constant(ConstantName::C, 200000).value;
  CHECK(std::fabs(c1 - c2) < 1e-6);
  CHECK(c2 == doctest::Approx(0.131751477058).epsilon(1e-8));
  const double p = constant(ConstantName::scriptP, 200000).value, pa = constant(ConstantName::scriptP_alt, 200000).value;
  CHECK(std::fabs(p - pa) < 1e-9);
  CHECK(c0() == doctest::Approx(0.010953174209).epsilon(1e-9));
  CHECK(std::fabs(remarkable_identity(100000) - 1.0) < 1e-6);
  CHECK_THROWS_AS(constant(ConstantName::C, 10), Error);
}

TEST_CASE("prime ideal census") {
  const double n = static_cast<double>(count_ideals_upto(200000));
  CHECK(std::fabs(n / landau_ideal_count(200000) - 1.0) < 0.01);
}
