#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cml/eisenstein.hpp"

using namespace cml;

TEST_CASE("ring arithmetic matches complex multiplication") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<i64> d(-1000, 1000);
  const std::complex<double> w(-0.5, std::sqrt(3.0) / 2);
  for (int i = 0; i < 500; ++i) {
    EisInt x{d(rng), d(rng)}, y{d(rng), d(rng)};
    auto cx = [&](EisInt z) { return double(z.a) + double(z.b) * w; };
    CHECK(std::abs(cx(x * y) - cx(x) * cx(y)) < 1e-6);
    CHECK(norm(x * y) == norm(x) * norm(y));
    CHECK(norm(x) == static_cast<i64>(std::llround(std::norm(cx(x)))));
    CHECK(trace(x) == static_cast<i64>(std::llround(2 * cx(x).real())));
    CHECK(conj(conj(x)) == x);
  }
  CHECK(kLambda * kLambda == EisInt{-3, 0});
  CHECK(kOmega * kOmega == kOmega2);
  CHECK(kOmega * kOmega2 == EisInt{1, 0});
}

TEST_CASE("overflow is detected") {
  EisInt big{i64(1) << 40, 0};
  CHECK_THROWS_AS(big * big, Error);
}

TEST_CASE("primary associates and lambda split") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<i64> d(-500, 500);
  for (int i = 0; i < 500; ++i) {
    EisInt x{d(rng), d(rng)};
    if (x.is_zero()) continue;
    LambdaSplit s = lambda_split(x);
    CHECK(is_unit(s.unit));
    CHECK(is_primary(s.primary));
    CHECK(s.unit * pow(kLambda, s.k) * s.primary == x);
    if (!divisible_by_lambda(x)) {
      Associate a = primary_associate(x);
      CHECK(a.unit * x == a.primary);
      CHECK(is_primary(a.primary));
    }
  }
  CHECK_THROWS_AS(primary_associate(kLambda), Error);
}

TEST_CASE("division with remainder and gcd") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<i64> d(-10000, 10000);
  for (int i = 0; i < 500; ++i) {
    EisInt x{d(rng), d(rng)}, y{d(rng), d(rng)};
    if (y.is_zero()) continue;
    DivMod qr = divmod(x, y);
    CHECK(qr.q * y + qr.r == x);
    CHECK(4 * norm(qr.r) <= 3 * norm(y));
    EisInt g = gcd(x, y);
    if (!g.is_zero()) {
      CHECK(divides(g, x));
      CHECK(divides(g, y));
    }
  }
  CHECK(gcd({7, 0}, {-2, -3}) == EisInt{-2, -3});
  CHECK(coprime({2, 0}, {5, 0}));
  CHECK_THROWS_AS(divmod({1, 0}, {0, 0}), Error);
}

TEST_CASE("enumeration counts and classes mod 9") {
  auto all = enumerate_by_norm(1000);
  // 6 units times the ideal count
  std::size_t ones = 0;
  for (auto& x : all) ones += norm(x) == 1;
  CHECK(ones == 6);
  auto prim = enumerate_primary(1000);
  std::size_t coprime3 = 0;
  for (auto& x : all) coprime3 += !divisible_by_lambda(x);
  CHECK(prim.size() * 6 == coprime3);
  for (std::size_t i = 1; i < prim.size(); ++i) CHECK(norm(prim[i - 1]) <= norm(prim[i]));
  CHECK(primary_classes_mod9().size() == 9);
  CHECK(classes_coprime_to_3().size() == 54);
  CHECK(parse_eis("-2,-3") == EisInt{-2, -3});
  CHECK_THROWS_AS(parse_eis("x"), Error);
}
