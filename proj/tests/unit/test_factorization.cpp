#include <doctest.h>

#include <random>

#include "cml/factorization.hpp"

using namespace cml;

TEST_CASE("rational primes and sieve") {
  const SpfTable& t = spf_table(100000);
  for (std::uint32_t n = 2; n < 100000; ++n) CHECK(t.is_prime(n) == is_prime_u64(n));
  CHECK(is_prime_u64(1000000007ull));
  CHECK(!is_prime_u64(1000000007ull * 3));
  CHECK(cube_root_of_unity_mod(7) * cube_root_of_unity_mod(7) % 7 != 1);
}

TEST_CASE("splitting of rational primes") {
  auto s = split_rational_prime(7);
  CHECK(s.kind == SplitResult::Kind::Split);
  CHECK(norm(s.pi) == 7);
  CHECK(s.pi * s.pi_bar == EisInt{7, 0});
  CHECK(is_primary(s.pi));
  CHECK(split_rational_prime(5).kind == SplitResult::Kind::Inert);
  CHECK(split_rational_prime(3).kind == SplitResult::Kind::Ramified);
}

TEST_CASE("factorization multiplies back") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<i64> d(-3000, 3000);
  for (int i = 0; i < 300; ++i) {
    EisInt x{d(rng), d(rng)};
    if (x.is_zero()) continue;
    EisFactorization f = factor(x);
    CHECK(f.product() == x);
    for (const auto& pp : f.primes) CHECK(is_primary_prime(pp.pi));
  }
  CHECK(mobius({1, 0}) == 1);
  CHECK(mobius({7, 0}) == 1);  // two split primes
  CHECK(mobius({5, 0}) == -1);
  CHECK(mobius({49, 0}) == 0);
  CHECK(is_squarefree({10, 0}));
  CHECK(num_divisors({7, 0}) == 4);
  CHECK_THROWS_AS(factor({0, 0}), Error);
}
