#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "cml/factorization.hpp"
#include "cml/gauss_sums.hpp"
#include "cml/weights.hpp"

namespace cml {

// Primary n with N(n) <= bound, sorted by norm, each with its least prime
// factor and cofactor so that any multiplicative character can be filled in
// one pass from its values on primes.
class IdealIndex {
 public:
  explicit IdealIndex(i64 bound);
  i64 bound() const { return bound_; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<EisInt>& elements() const { return elems_; }
  const std::vector<i64>& norms() const { return norms_; }
  const std::vector<double>& inv_sqrt_norms() const { return isq_; }
  // Number of elements with norm <= b.
  std::size_t count_upto(i64 b) const;
  // chi_q(n) for every n, as exponent 0..2 or 3 for zero.
  void chi_table(EisInt q, std::vector<std::uint8_t>& out, i64 upto = -1) const;
  // Factorization of elements()[i], primes ordered by (norm, a, b).
  EisFactorization factorization(std::size_t i) const;

 private:
  i64 bound_;
  std::vector<EisInt> elems_;
  std::vector<i64> norms_;
  std::vector<double> isq_;
  std::vector<std::int32_t> prime_of_;  // index into primes_, -1 for n = 1
  std::vector<std::int32_t> cofactor_;  // index of n / pi
  std::vector<EisInt> primes_;
};

// Shared index covering at least `bound`.
const IdealIndex& ideal_index(i64 bound);

inline constexpr std::uint8_t kChiZero = 3;

struct AfeOptions {
  double T = 6.0;      // A1 keeps N(n) <= T sqrt(3 N(q))
  double T2 = 6.0;     // A2 keeps N(n1 n2) <= T2 * 3 N(q)
  i64 a2_cap = 10000;  // largest N(q) for the quadratic A2 sum
};

struct LValueRecord {
  EisInt q;
  i64 conductor_norm = 0;
  cplx L_half;
  cplx a1;
  double a2 = std::numeric_limits<double>::quiet_NaN();
  double a2_imag = 0.0;
  i64 terms_used = 0;
  double afe_tail_bound = 0.0;
};

// q primary, squarefree, q = 1 (mod 9), q != 1.
bool in_f3prime(EisInt q);
void require_f3prime(EisInt q);

struct A1Result {
  cplx value;
  i64 terms = 0;
  double tail_bound = 0.0;
};
A1Result a1(EisInt q, const AfeOptions& opt = {}, bool conjugate_character = false);
// Real part of A2; the imaginary part of the accumulator is returned in imag_out.
double a2(EisInt q, const AfeOptions& opt = {}, double* imag_out = nullptr);
LValueRecord l_half(EisInt q, const AfeOptions& opt = {}, bool with_a2 = false);

// Certified-style bound for the A1 tail beyond N(n) = T sqrt(3 N(q)).
double a1_tail_bound(i64 norm_q, double T);

// L(s, chi_q) for q = q1 q2^2 in the family and 0 <= Re s <= 1.
cplx l_strip(EisInt q1, EisInt q2, cplx s, double Y, int A = 2);

}  // namespace cml
