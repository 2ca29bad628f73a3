#include <doctest.h>

#include "cml/bias_lab.hpp"

using namespace cml;

TEST_CASE("psi_ddot equals a twisted Gauss sum") {
  for (EisInt q : {EisInt{-2, -3}, EisInt{1, 3}})
    for (EisInt k : {EisInt{1, 0}, EisInt{2, 5}, EisInt{0, 0}}) {
      // chi_q(9 lambda) g3(-k, q)
      const CubicSymbolValue v = symbol({9, 18}, q);
      const cplx expect = v.to_complex() * g3_direct(EisInt{0, 0} - k, q);
      CHECK(std::abs(psi_ddot_direct(q, k) - expect) < 1e-9);
    }
}

TEST_CASE("Poisson identity for the trivial and a split modulus") {
  CHECK(poisson_check({1, 0}, {1, 0}, 400).residual < 1e-9);
  CHECK(poisson_check({-2, -3}, {1, 0}, 400).residual < 1e-8);
  CHECK_THROWS_AS(poisson_check({2, 0}, {1, 0}, 400), Error);
}

TEST_CASE("coprimality identities at small truncation") {
  for (int item = 1; item <= 3; ++item) {
    auto r = coprimality_identity_check(item, {-2, -3}, {-5, 0}, {1, 0}, 2.0, 20000);
    CHECK(r.ok());
  }
  auto c = coprimality_corollary_check({-2, -3}, {1, 0}, {1, 3}, {-5, 0}, 2.0, 20000);
  CHECK(c.ok());
}

TEST_CASE("large sieve probe") {
  CHECK(large_sieve_ratio(200, 200, 3, 1, 1, true).max_ratio == 0.0);
  const double a = large_sieve_ratio(300, 300, 10, 1).max_ratio, b = large_sieve_ratio(300, 300, 10, 2).max_ratio;
  CHECK(a > 0);
  CHECK(std::fabs(a / b - 1.0) < 0.5);
  CHECK_THROWS_AS(large_sieve_ratio(0, 10, 1, 1), Error);
}

TEST_CASE("bias scan for k = 1 at small T") {
  BiasReport b = bias_scan({1, 0}, 50000);
  CHECK(b.T.size() >= 5);
  CHECK(b.final_ratio > 0.8);
  CHECK(b.final_ratio < 1.2);
  for (cplx z : b.partial) CHECK(z.real() > 0);
  CHECK_THROWS_AS(bias_scan({0, 0}, 1000), Error);
}
