#include "cml/cubic_symbol.hpp"

#include <cmath>
#include <numbers>

#include "cml/factorization.hpp"

namespace cml {

namespace {

int centered3(i64 v) {
  int r = static_cast<int>(((v % 3) + 3) % 3);
  return r == 2 ? -1 : r;
}

void require_primary_modulus(EisInt b) {
  if (b.is_zero() || !is_primary(b)) throw Error(ErrorKind::BadModulus, b.str() + " is not 1 mod 3");
}

// exponent j with u = +-omega^j
int unit_omega_exponent(EisInt u) {
  const auto& us = units();
  for (int i = 0; i < 6; ++i)
    if (us[i] == u) return i % 3;
  throw Error(ErrorKind::BadModulus, u.str() + " is not a unit");
}

}  // namespace

std::complex<double> CubicSymbolValue::to_complex() const {
  if (zero) return {0.0, 0.0};
  static const std::complex<double> roots[3] = {
      {1.0, 0.0}, {-0.5, std::numbers::sqrt3 / 2}, {-0.5, -std::numbers::sqrt3 / 2}};
  return roots[k];
}

// d = (1 + 3x) + 3y w.  lambda^2 = -3, lambda^3 = -3 - 6w, so
// a2 lambda^2 + a3 lambda^3 = -3(a2 + a3) - 6 a3 w, giving
// y = a3 and x = -(a2 + a3) mod 3.
SuppExponents supplementary_exponents(EisInt d) {
  require_primary_modulus(d);
  i64 x = (d.a - 1) / 3, y = d.b / 3;
  int a3 = centered3(y);
  int a2 = centered3(-x - a3);
  return {a2, a3};
}

CubicSymbolValue symbol_definition(EisInt a, EisInt pi) {
  if (!is_primary_prime(pi)) throw Error(ErrorKind::NotPrimaryPrime, pi.str());
  EisInt r = mod(a, pi);
  if (r.is_zero()) return CubicSymbolValue::Zero();
  i64 n = norm(pi);
  u64 e = static_cast<u64>(n - 1) / 3;
  EisInt acc{1, 0};
  EisInt base = r;
  while (e) {
    if (e & 1) acc = mod(acc * base, pi);
    base = mod(base * base, pi);
    e >>= 1;
  }
  EisInt w{1, 0};
  for (int k = 0; k < 3; ++k) {
    if (divides(pi, acc - w)) return CubicSymbolValue::Root(k);
    w = w * kOmega;
  }
  throw Error(ErrorKind::NotPrimaryPrime, "power residue not a cube root of unity mod " + pi.str());
}

CubicSymbolValue symbol_by_factoring(EisInt a, EisInt b) {
  require_primary_modulus(b);
  CubicSymbolValue v = CubicSymbolValue::Root(0);
  if (b == EisInt{1, 0}) return v;
  for (const auto& pp : factor(b).primes) v = v * symbol_definition(a, pp.pi).pow(pp.e);
  return v;
}

CubicSymbolValue symbol(EisInt a, EisInt b) {
  require_primary_modulus(b);
  int k = 0;
  while (true) {
    if (b == EisInt{1, 0}) return CubicSymbolValue::Root(k);
    a = mod(a, b);
    if (a.is_zero()) return CubicSymbolValue::Zero();
    LambdaSplit s = lambda_split(a);
    SuppExponents ex = supplementary_exponents(b);
    // (-1/b) = 1, (omega/b) = omega^a2, (lambda/b) = omega^{-a3}
    k += unit_omega_exponent(s.unit) * ex.alpha2 - s.k * ex.alpha3;
    k %= 3;
    // reciprocity for the primary part
    a = b;
    b = s.primary;
  }
}

CubicSymbolValue chi_q(EisInt q, EisInt x) { return symbol(x, q); }

CubicSymbolValue chi_q_ideal(EisInt q, int g, EisInt n) {
  require_primary_modulus(q);
  SuppExponents ex = supplementary_exponents(q);
  CubicSymbolValue lam = CubicSymbolValue::Root(-ex.alpha3);
  return lam.pow(g) * symbol(n, q);
}

// eta runs over +-omega^a lambda^b, b <= 2. Since
// chi(-1) = 1 this is twice the nine-term sum, hence the 1/18.
double indicator_mod9_via_characters(EisInt m, EisInt c) {
  require_primary_modulus(m);
  require_primary_modulus(c);
  std::complex<double> acc{0.0, 0.0};
  for (const EisInt& u : units())
    for (int b = 0; b < 3; ++b) {
      EisInt eta = u * pow(kLambda, static_cast<unsigned>(b));
      acc += (symbol(eta, c) * symbol(eta, m).conj()).to_complex();
    }
  return acc.real() / 18.0;
}

}  // namespace cml
