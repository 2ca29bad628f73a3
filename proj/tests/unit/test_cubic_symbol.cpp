#include <doctest.h>

#include <random>

#include "cml/cubic_symbol.hpp"
#include "cml/factorization.hpp"

using namespace cml;

TEST_CASE("fast symbol agrees with the exponentiation definition") {
  std::mt19937_64 rng(17);
  auto prim = enumerate_primary(20000);
  std::uniform_int_distribution<std::size_t> pick(0, prim.size() - 1);
  std::uniform_int_distribution<i64> d(-100000, 100000);
  for (int i = 0; i < 2000; ++i) {
    EisInt b = prim[pick(rng)], a{d(rng), d(rng)};
    CHECK(symbol(a, b) == symbol_by_factoring(a, b));
  }
}

TEST_CASE("supplementary laws against the definition") {
  for (const EisInt& pi : enumerate_primary(3000)) {
    if (!is_primary_prime(pi)) continue;
    CHECK(symbol(kOmega, pi) == symbol_definition(kOmega, pi));
    CHECK(symbol(kLambda, pi) == symbol_definition(kLambda, pi));
    CHECK(symbol({-1, 0}, pi) == CubicSymbolValue::Root(0));
  }
}

TEST_CASE("character properties") {
  EisInt b{-2, -3};
  int counts[4] = {0, 0, 0, 0};
  for (i64 x = 0; x < 7; ++x) {
    auto v = symbol({x, 0}, b);
    counts[v.zero ? 3 : v.k]++;
  }
  CHECK(counts[3] == 1);
  CHECK(counts[0] == 2);
  CHECK(symbol({7, 0}, b).zero);
  CHECK_THROWS_AS(symbol({1, 0}, {2, 0}), Error);  // 2 is not primary
}

TEST_CASE("mod 9 indicator via characters") {
  for (const EisInt& m : enumerate_primary(400))
    for (const auto& c : primary_classes_mod9()) {
      const double v = indicator_mod9_via_characters(m, c.representative());
      CHECK(v == doctest::Approx(reduce_mod9(m) == c ? 1.0 : 0.0).epsilon(1e-12));
    }
}
