#include <doctest.h>

#include "cml/gauss_sums.hpp"

using namespace cml;

TEST_CASE("fast Gauss sums match the defining sum") {
  for (const EisInt& c : enumerate_primary(1500))
    for (EisInt mu : {EisInt{1, 0}, kLambda, EisInt{5, -7}, EisInt{7, 0}}) {
      const double scale = std::sqrt(static_cast<double>(norm(c)));
      CHECK(std::abs(g3_fast(mu, c) - g3_direct(mu, c)) / scale < 1e-9);
    }
}

TEST_CASE("magnitude and cube relation") {
  for (const EisInt& c : enumerate_primary(800)) {
    const double N = static_cast<double>(norm(c));
    CHECK(std::norm(g3_direct({1, 0}, c)) == doctest::Approx(is_squarefree(c) ? N : 0.0).epsilon(1e-9).scale(N));
  }
  for (u64 p : {7ull, 13ull, 997ull, 4999ull}) {
    auto s = split_rational_prime(p);
    CHECK(cube_relation_check(s.pi, true) / std::pow(double(p), 1.5) < 1e-9);
  }
  CHECK_THROWS_AS(cube_relation_check({5, 0}, true), Error);
}

TEST_CASE("generator-walk prime sums") {
  for (u64 p : {7ull, 31ull, 1999ull}) {
    auto s = split_rational_prime(p);
    CHECK(std::abs(g3_prime(s.pi) - g3_direct({1, 0}, s.pi)) < 1e-8);
  }
  EisInt inert{-5, 0};
  CHECK(std::abs(g3_prime(inert) - g3_direct({1, 0}, inert)) < 1e-8);
}

TEST_CASE("root number identity") {
  auto rn = root_number({10, 0}, {1, 0});
  CHECK(std::abs(rn.direct - rn.product) < 1e-10);
  CHECK(std::abs(rn.product) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tau3 is supported on lambda^2 times a cube-free part") {
  CHECK(std::abs(tau3({1, 0}) - 27.0) < 1e-9);
  CHECK(std::abs(tau3(kOmega)) < 1e-12);
}
