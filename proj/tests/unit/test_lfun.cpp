#include <doctest.h>

#include "cml/family.hpp"
#include "cml/lfun.hpp"

using namespace cml;

TEST_CASE("family membership") {
  CHECK(in_f3prime({10, 0}));
  CHECK(!in_f3prime({1, 0}));
  CHECK(!in_f3prime({-2, -3}));  // not 1 mod 9
  CHECK_THROWS_AS(require_f3prime({4, 0}), Error);
}

TEST_CASE("L(1/2) is stable under the AFE truncation and matches A2") {
  const EisInt q{10, 0};
  AfeOptions a, b;
  a.T = 4;
  b.T = 10;
  const cplx la = l_half(q, a).L_half, lb = l_half(q, b).L_half;
  CHECK(std::abs(la - lb) < 1e-10);
  const LValueRecord r = l_half(q, {}, true);
  CHECK(std::fabs(std::norm(r.L_half) - 2 * r.a2) / std::norm(r.L_half) < 1e-8);
  CHECK(std::abs(l_strip(q, {1, 0}, {0.5, 0.0}, 1.0) - r.L_half) < 1e-9);
}

TEST_CASE("strip evaluation is independent of the AFE split parameter") {
  const EisInt q{10, 0};
  const cplx s{0.3, 2.0};
  CHECK(std::abs(l_strip(q, {1, 0}, s, 0.7) - l_strip(q, {1, 0}, s, 1.4)) < 1e-9);
  CHECK_THROWS_AS(l_strip(q, {1, 0}, {1.5, 0.0}, 1.0), Error);
}

TEST_CASE("ideal index factorizations") {
  const IdealIndex& ix = ideal_index(5000);
  for (std::size_t i = 0; i < ix.count_upto(5000); i += 7) CHECK(ix.factorization(i).product() == ix.elements()[i]);
}
