#pragma once

#include <string>
#include <vector>

#include "cml/gauss_sums.hpp"
#include "cml/lfun.hpp"
#include "cml/weights.hpp"

namespace cml {

inline constexpr i64 kBiasCap = 10000000;

// sum over primary c with N(c) <= T and (c, coprime_to) = 1 of g3(r, c) / N(c)^s
cplx psi_truncated(EisInt r, cplx s, i64 T, EisInt coprime_to = {1, 0}, int workers = 1);

// c0 tau3(r) / N(r)^{1/6}
cplx polar_prediction(EisInt r);

struct BiasReport {
  EisInt k;
  std::vector<double> T;
  std::vector<cplx> partial;     // sum of normalized g3(k, n) over N(n) <= T
  std::vector<cplx> predicted;   // (6/5) c0 tau3(k) N(k)^{-1/6} T^{5/6}
  std::vector<double> ratio;     // |partial| / |predicted|, NaN when tau3(k) = 0
  double exponent = 0;           // least-squares slope of log|partial| on log T
  double final_ratio = 0;
};
// Dyadic points Tmax / 2^j down to t_min (at least five points).
BiasReport bias_scan(EisInt k, i64 Tmax, int workers = 1, i64 t_min = 1000);

struct CoprimalityResult {
  std::string item;  // "i", "ii", "iii", "cor"
  cplx lhs, rhs;
  double residual = 0;
  double budget = 0;  // 10 T^{-1/2}
  bool ok() const { return residual <= budget; }
};
// Item 1, 2 or 3 of the coprimality-removal identities for psi.
CoprimalityResult coprimality_identity_check(int item, EisInt alpha, EisInt beta, EisInt r, cplx s, i64 T,
                                             int workers = 1);
CoprimalityResult coprimality_corollary_check(EisInt a, EisInt b, EisInt c, EisInt r, cplx s, i64 T,
                                              int workers = 1);
// n random parameter choices cycling through the three items and the corollary.
std::vector<CoprimalityResult> coprimality_random_suite(int n, i64 T, unsigned seed, int workers = 1);

// max over trials of LHS / (|lambda|^2 (A + B + (AB)^{2/3})) for random
// +-1 coefficients on squarefree primary b.
struct SieveReport {
  double max_ratio = 0;
  std::vector<double> ratios;
  std::size_t count_a = 0, count_b = 0;
};
SieveReport large_sieve_ratio(i64 A, i64 B, int trials, unsigned seed, int workers = 1,
                              bool zero_coefficients = false);

struct PoissonReport {
  cplx lhs, rhs;
  double residual = 0;   // |lhs - rhs| / max(|lhs|, |rhs|, size of the k = 0 term)
  double truncation_change = 0;  // |rhs(K) - rhs(K/2)| at the final K
  i64 k_norm_bound = 0;
  std::size_t k_terms = 0;
};
// q primary with N(q) <= 50, Psi = chi_q, V = bump, m restricted to c mod 9.
PoissonReport poisson_check(EisInt q, EisInt c, double M);
// sum over b mod q of Psi(9 lambda b) e(-k b / q) with Psi = chi_q, directly.
cplx psi_ddot_direct(EisInt q, EisInt k);

}  // namespace cml
