#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cml/errors.hpp"

namespace cml {

using i64 = std::int64_t;
using i128 = __int128;

// a + b*omega, omega = exp(2 pi i / 3). Coordinates are checked on every
// arithmetic step; anything that leaves int64 throws ErrorKind::Overflow.
struct EisInt {
  i64 a = 0;
  i64 b = 0;

  constexpr EisInt() = default;
  constexpr EisInt(i64 a_, i64 b_ = 0) : a(a_), b(b_) {}

  friend constexpr bool operator==(const EisInt&, const EisInt&) = default;
  friend constexpr auto operator<=>(const EisInt&, const EisInt&) = default;

  bool is_zero() const { return a == 0 && b == 0; }
  std::string str() const;
};

inline constexpr EisInt kOmega{0, 1};
inline constexpr EisInt kOmega2{-1, -1};
inline constexpr EisInt kLambda{1, 2};

EisInt operator+(EisInt x, EisInt y);
EisInt operator-(EisInt x, EisInt y);
EisInt operator-(EisInt x);
EisInt operator*(EisInt x, EisInt y);

EisInt conj(EisInt x);
i64 norm(EisInt x);
// Tr(a + b omega) = 2a - b
i64 trace(EisInt x);
EisInt pow(EisInt x, unsigned e);

// The six units in the fixed order omega^j, -omega^j for j = 0,1,2.
const std::vector<EisInt>& units();
bool is_unit(EisInt x);

bool divisible_by_lambda(EisInt x);
bool is_primary(EisInt x);  // x = 1 (mod 3)

struct Associate {
  EisInt unit;
  EisInt primary;
};
// unit * x = primary, primary = 1 (mod 3).
Associate primary_associate(EisInt x);

struct DivMod {
  EisInt q;
  EisInt r;
};
// Rounds x/y coordinatewise, so N(r) <= 3/4 N(y).
DivMod divmod(EisInt x, EisInt y);
EisInt mod(EisInt x, EisInt y);
bool divides(EisInt d, EisInt x);
// Exact quotient; throws if d does not divide x.
EisInt exact_div(EisInt x, EisInt d);

// lambda^k * primary generator of (x, y).
EisInt gcd(EisInt x, EisInt y);
bool coprime(EisInt x, EisInt y);

// Splits x = unit * lambda^k * primary.
struct LambdaSplit {
  EisInt unit;
  int k = 0;
  EisInt primary;
};
LambdaSplit lambda_split(EisInt x);

// Residues modulo the ideal (9), coordinates in [0, 9).
struct ResidueClassMod9 {
  int a = 0;
  int b = 0;
  bool coprime_to_3() const { return (a + b) % 3 != 0; }
  EisInt representative() const { return {a, b}; }
  friend bool operator==(const ResidueClassMod9&, const ResidueClassMod9&) = default;
};
ResidueClassMod9 reduce_mod9(EisInt x);
std::vector<ResidueClassMod9> classes_coprime_to_3();
// The nine classes 1 + 3z, z mod 3.
std::vector<ResidueClassMod9> primary_classes_mod9();

struct ClassFilter {
  enum class Kind { All, Primary, Mod9 } kind = Kind::All;
  ResidueClassMod9 cls{};
  static ClassFilter all() { return {}; }
  static ClassFilter primary() { return {Kind::Primary, {}}; }
  static ClassFilter mod9(ResidueClassMod9 c) { return {Kind::Mod9, c}; }
  bool accepts(EisInt x) const;
};

// Every x with 0 < N(x) <= bound passing the filter, ordered by norm then (a, b).
std::vector<EisInt> enumerate_by_norm(i64 bound, ClassFilter filter = ClassFilter::all());
// Primary elements only, same ordering; walks the sublattice directly.
std::vector<EisInt> enumerate_primary(i64 bound);

struct EisHash {
  std::size_t operator()(const EisInt& x) const noexcept {
    return std::hash<i64>()(x.a * 0x9E3779B97F4A7C15ULL ^ (x.b + 0x632BE59BD9B4E019ULL));
  }
};

EisInt parse_eis(const std::string& s);  // "a,b"

}  // namespace cml
