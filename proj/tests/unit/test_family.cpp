#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cml/family.hpp"

using namespace cml;

TEST_CASE("family enumeration") {
  auto f = enumerate_f3prime(2000);
  for (const EisInt& q : f) {
    CHECK(in_f3prime(q));
    CHECK(is_squarefree(q));
  }
  bool has10 = false;
  for (const EisInt& q : f) has10 = has10 || q == EisInt{10, 0};
  CHECK(has10);
  const double n = static_cast<double>(enumerate_f3prime(400000, 200000).size());
  CHECK(std::fabs(n / f3prime_window_prediction(200000) - 1.0) < 0.05);
}

TEST_CASE("square-divisor split of mu^2") {
  const EisInt pi{-2, -3};
  CHECK(m_y(pi * pi, 100) == 0);
  CHECK(r_y(pi * pi, 100) == 0);
  CHECK(m_y(pi * pi * EisInt{-5, 0}, 3) == 1);
  CHECK(r_y(pi * pi * EisInt{-5, 0}, 3) == -1);
  for (const EisInt& q : enumerate_primary(3000)) CHECK(m_y(q, 10) + r_y(q, 10) == (is_squarefree(q) ? 1 : 0));
  SmDecomposition d = sm_decomposition(2000, 5, TestKind::Bump, 4);
  CHECK(d.S == doctest::Approx(d.S_M + d.S_R_signed).epsilon(1e-12));
}

TEST_CASE("L cache round trip and mismatch") {
  const auto dir = std::filesystem::temp_directory_path() / "cml_unit_cache";
  std::filesystem::remove_all(dir);
  {
    LCache c(dir.string(), 6.0);
    c.load();
    c.put({10, 0}, {{0.1234567890123456789, -1.0 / 3.0}, 17, 1e-20});
    c.flush();
  }
  LCache r(dir.string(), 6.0);
  r.load();
  const LCache::Entry* e = r.find({10, 0});
  REQUIRE(e);
  CHECK(e->L == cplx(0.1234567890123456789, -1.0 / 3.0));
  CHECK(e->terms == 17);
  LCache other(dir.string(), 4.0);
  CHECK_THROWS_AS(other.load(), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("mollifier identities") {
  MollifierSpec m = build_mollifier_length(300);
  CHECK(std::fabs(q1_via_lambda(m) - q1_via_xi(m)) < 1e-9);
  MollifierSpec one = build_mollifier_length(1);
  CHECK(one.support.size() == 1);
  for (const EisInt& q : enumerate_f3prime(3000)) CHECK(std::abs(mollifier_value(m, q)) <= mollifier_triangle_bound(m) + 1e-9);
  CHECK_THROWS_AS(build_mollifier(0.5, 1e5), Error);
}

TEST_CASE("small first moment is deterministic across worker counts") {
  MomentOptions a, b;
  a.workers = 1;
  b.workers = 3;
  const MomentReport ra = moment(MomentKind::First, 3000, TestKind::Bump, a);
  const MomentReport rb = moment(MomentKind::First, 3000, TestKind::Bump, b);
  CHECK(ra.raw == rb.raw);
  CHECK(ra.count > 0);
}
