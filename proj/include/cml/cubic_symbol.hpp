#pragma once

#include <complex>

#include "cml/eisenstein.hpp"

namespace cml {

// Zero, or omega^k with k in {0, 1, 2}.
struct CubicSymbolValue {
  bool zero = false;
  int k = 0;

  static CubicSymbolValue Zero() { return {true, 0}; }
  static CubicSymbolValue Root(int k) { return {false, ((k % 3) + 3) % 3}; }

  CubicSymbolValue operator*(CubicSymbolValue o) const {
    if (zero || o.zero) return Zero();
    return Root(k + o.k);
  }
  CubicSymbolValue conj() const { return zero ? Zero() : Root(-k); }
  CubicSymbolValue pow(int e) const { return zero ? (e == 0 ? Root(0) : Zero()) : Root(k * e); }
  std::complex<double> to_complex() const;
  friend bool operator==(const CubicSymbolValue&, const CubicSymbolValue&) = default;
};

// d = 1 + a2 lambda^2 + a3 lambda^3 (mod 9), a2, a3 in {-1, 0, 1}.
struct SuppExponents {
  int alpha2 = 0;
  int alpha3 = 0;
};
SuppExponents supplementary_exponents(EisInt d);

// a^{(N pi - 1)/3} mod pi, by exponentiation in Z[omega]/(pi).
CubicSymbolValue symbol_definition(EisInt a, EisInt pi);
// Multiplicative extension through the factorization of b (oracle path).
CubicSymbolValue symbol_by_factoring(EisInt a, EisInt b);

// (a/b)_3 for b = 1 (mod 3), by Euclidean descent with reciprocity.
CubicSymbolValue symbol(EisInt a, EisInt b);

// chi_q on the ideal (lambda^g n), n primary.
CubicSymbolValue chi_q(EisInt q, EisInt x);
CubicSymbolValue chi_q_ideal(EisInt q, int g, EisInt n);

// (1/18) sum over eta = +-omega^a lambda^b of chi_c(eta) conj(chi_m(eta)); 1 iff m = c (mod 9)
double indicator_mod9_via_characters(EisInt m, EisInt c);

}  // namespace cml
