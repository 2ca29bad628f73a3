#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cml/factorization.hpp"

namespace cml {

double zeta_K(double s);
double zeta_lambda(double s);
// Limit of (s - 1) zeta_lambda(s) at s = 1 by Richardson extrapolation over
// s in {1.1, 1.01, 1.001}.
double zeta_lambda_residue_extrapolated();

enum class MultFn { r, g, h, G, H, eta };
MultFn parse_mult_fn(const std::string& s);
// Value on a prime ideal of norm q (q != 3).
double mult_fn(MultFn f, double q);

// Norms of prime ideals coprime to 3 with norm <= bound, ascending, with
// multiplicity (split p appears twice).
std::vector<u64> prime_ideal_norms(u64 bound);
std::size_t count_ideals_upto(u64 bound);  // all nonzero ideals, including lambda powers
double landau_ideal_count(double x);       // residue of zeta_K times x

enum class ConstantName { C, D, c0, scriptP, scriptP_alt, C1 };
ConstantName parse_constant(const std::string& s);
std::string constant_label(ConstantName c);

struct EulerProductResult {
  std::string name;
  double value = 0.0;        // truncated product completed with zeta factors and tail
  double raw = 0.0;          // prefactor times the bare truncated product
  u64 prime_norm_bound = 0;
  double tail_estimate = 0.0;
  double successive_diff = 0.0;  // |value(B) - value(B/2)|
  double fitted_K = 0.0;         // max over primes of |factor - 1| q^{3/2}
};

EulerProductResult constant(ConstantName name, u64 prime_bound, int workers = 1);
// Truncation of P * prod (C factor)^2 / (D factor); tends to 1.
double remarkable_identity(u64 prime_bound);
// Per-prime factor of the product above.
double remarkable_factor(double q);

double c0();
// (2 pi / (9 sqrt 3)): residue of zeta_lambda at s = 1.
double zeta_lambda_residue();

}  // namespace cml
