#pragma once

#include <complex>
#include <mutex>
#include <string>
#include <unordered_map>

#include "cml/cubic_symbol.hpp"
#include "cml/factorization.hpp"

namespace cml {

using cplx = std::complex<double>;

// e(k / n) with k reduced exactly mod n first.
cplx e_frac(i64 k, i64 n);
// e(Tr(num / den)), reduced exactly: Tr(num conj(den)) mod N(den).
cplx e_check(EisInt num, EisInt den);

inline constexpr i64 kDirectCap = 1000000;

// Sum over a full residue system d mod c of chi_c(d) e(Tr(mu d / c)).
cplx g3_direct(EisInt mu, EisInt c, i64 cap = kDirectCap);

// g3(1, pi) for a primary prime pi in O(N(pi)) using F_p (split) or F_{p^2}
// (inert) and a generator walk. Exact phases resynchronised every 1024 steps.
cplx g3_prime(EisInt pi);

// Base values g3(pi) for all primary primes of norm <= bound.
class GaussTable {
 public:
  // Extends the table to `bound`; reads/writes `cache_path` when non-empty.
  void ensure(i64 bound, const std::string& cache_path = "", int workers = 1);
  i64 bound() const { return bound_; }
  // g3(1, pi); falls back to g3_prime when pi is outside the table.
  cplx value(EisInt pi) const;
  std::size_t size() const { return split_.size() + inert_.size(); }

 private:
  struct Entry {
    EisInt pi;
    cplx g;
  };
  i64 bound_ = 0;
  std::unordered_map<u64, Entry> split_;  // keyed by p, value for the stored pi
  std::unordered_map<u64, cplx> inert_;   // keyed by p
  mutable std::mutex mu_;
};

GaussTable& gauss_table();

// g3(pi^k, pi^l) from the local table.
cplx g3_local(EisInt pi, int k, int l, cplx g_pi);

// Twisted multiplicativity over the factorization of c.
cplx g3_fast(EisInt mu, EisInt c);
cplx g3_fast(EisInt mu, EisInt c, const EisFactorization& fc);
inline cplx g3_tilde(EisInt mu, EisInt c) { return g3_fast(mu, c) / std::sqrt(static_cast<double>(norm(c))); }

// |g3(pi)^3 + pi^2 conj(pi)|
double cube_relation_check(EisInt pi, bool require_split = false);

// N(c1 c2)^{-1/2} sum_{x mod c1 c2, coprime} chi_{c1 c2^2}(x) e(Tr(mu x / (c1 c2)))
cplx h3_tilde(EisInt mu, EisInt c1, EisInt c2, i64 cap = kDirectCap);

struct RootNumber {
  cplx direct;   // W(chi_q) / N(q1 q2)^{1/2} from the character sum
  cplx product;  // g3~(q1) conj(g3~(q2))
};
RootNumber root_number(EisInt q1, EisInt q2, bool with_direct = true);

cplx tau3(EisInt r);

}  // namespace cml
