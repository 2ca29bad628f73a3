#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cml/eisenstein.hpp"

namespace cml {

using u64 = std::uint64_t;

// --- rational side ---------------------------------------------------------

bool is_prime_u64(u64 n);  // deterministic Miller-Rabin
std::vector<std::pair<u64, int>> factor_u64(u64 n);
u64 powmod_u64(u64 b, u64 e, u64 m);

// Smallest-prime-factor sieve, built once and shared read-only.
class SpfTable {
 public:
  explicit SpfTable(std::uint32_t limit);
  std::uint32_t limit() const { return limit_; }
  std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }
  bool is_prime(std::uint32_t n) const { return n >= 2 && spf_[n] == n; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

// Shared table covering at least `limit` (grows on demand, not thread safe
// while growing; call once before parallel sections).
const SpfTable& spf_table(std::uint32_t limit);

// --- Z[omega] side ---------------------------------------------------------

struct SplitResult {
  enum class Kind { Ramified, Inert, Split } kind;
  EisInt pi;       // lambda, primary associate of p, or first split prime
  EisInt pi_bar;   // second split prime (conjugate), else equal to pi
};
SplitResult split_rational_prime(u64 p);

// A root r of r^2 + r + 1 = 0 (mod p), p = 1 (mod 3).
u64 cube_root_of_unity_mod(u64 p);

struct PrimePower {
  EisInt pi;
  int e = 1;
};

struct EisFactorization {
  EisInt unit{1, 0};
  int lambda_exp = 0;
  std::vector<PrimePower> primes;  // sorted by (norm, a, b)

  EisInt product() const;
};

EisFactorization factor(EisInt x);
bool is_squarefree(EisInt x);
int mobius(EisInt x);
i64 num_divisors(EisInt x);
EisInt radical(EisInt x);

// Primary divisors of a primary element, with Moebius values.
std::vector<EisInt> primary_divisors(const EisFactorization& f);

bool is_primary_prime(EisInt pi);

// CSV cache of the primary pi over every p = 1 (mod 3), p <= bound.
void write_split_cache(const std::string& path, u64 bound);
std::vector<std::pair<u64, EisInt>> read_split_cache(const std::string& path);

}  // namespace cml
