#include "cml/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cml {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::DivisibleByLambda: return "DivisibleByLambda";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotPrimaryPrime: return "NotPrimaryPrime";
    case ErrorKind::BadModulus: return "BadModulus";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::NotInFamily: return "NotInFamily";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::OutOfStrip: return "OutOfStrip";
    case ErrorKind::DivergentArgument: return "DivergentArgument";
    case ErrorKind::RamifiedPrime: return "RamifiedPrime";
    case ErrorKind::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorKind::CacheMismatch: return "CacheMismatch";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

namespace {

i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorKind::Overflow, "coordinate exceeds 64 bits");
  return static_cast<i64>(v);
}

// floor(n / d) for d > 0
i128 floor_div(i128 n, i128 d) {
  i128 q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

i64 mod3(i64 v) { return ((v % 3) + 3) % 3; }

}  // namespace

std::string EisInt::str() const {
  std::ostringstream os;
  os << a << (b < 0 ? "-" : "+") << (b < 0 ? -b : b) << "w";
  return os.str();
}

EisInt operator+(EisInt x, EisInt y) { return {narrow(i128(x.a) + y.a), narrow(i128(x.b) + y.b)}; }
EisInt operator-(EisInt x, EisInt y) { return {narrow(i128(x.a) - y.a), narrow(i128(x.b) - y.b)}; }
EisInt operator-(EisInt x) { return {narrow(-i128(x.a)), narrow(-i128(x.b))}; }

// omega^2 = -1 - omega
EisInt operator*(EisInt x, EisInt y) {
  i128 ac = i128(x.a) * y.a, bd = i128(x.b) * y.b;
  i128 cross = i128(x.a) * y.b + i128(x.b) * y.a;
  return {narrow(ac - bd), narrow(cross - bd)};
}

EisInt conj(EisInt x) { return {narrow(i128(x.a) - x.b), narrow(-i128(x.b))}; }

i64 norm(EisInt x) { return narrow(i128(x.a) * x.a - i128(x.a) * x.b + i128(x.b) * x.b); }

i64 trace(EisInt x) { return narrow(2 * i128(x.a) - x.b); }

EisInt pow(EisInt x, unsigned e) {
  EisInt r{1, 0};
  while (e) {
    if (e & 1u) r = r * x;
    e >>= 1;
    if (e) x = x * x;
  }
  return r;
}

const std::vector<EisInt>& units() {
  static const std::vector<EisInt> u{{1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}};
  return u;
}

bool is_unit(EisInt x) { return norm(x) == 1; }

// omega = 1 (mod lambda), so lambda | a + b omega iff 3 | a + b
bool divisible_by_lambda(EisInt x) { return mod3(x.a + x.b) == 0; }

bool is_primary(EisInt x) { return mod3(x.a) == 1 && mod3(x.b) == 0; }

Associate primary_associate(EisInt x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroInput, "primary_associate(0)");
  if (divisible_by_lambda(x)) throw Error(ErrorKind::DivisibleByLambda, x.str());
  for (const EisInt& u : units()) {
    EisInt y = u * x;
    if (is_primary(y)) return {u, y};
  }
  throw Error(ErrorKind::DivisibleByLambda, x.str());  // unreachable
}

DivMod divmod(EisInt x, EisInt y) {
  if (y.is_zero()) throw Error(ErrorKind::DivisionByZero, "divmod by 0");
  EisInt yc = conj(y);
  i128 n = i128(y.a) * y.a - i128(y.a) * y.b + i128(y.b) * y.b;
  // x * conj(y) in 128 bits
  i128 ac = i128(x.a) * yc.a, bd = i128(x.b) * yc.b;
  i128 u = ac - bd;
  i128 v = i128(x.a) * yc.b + i128(x.b) * yc.a - bd;
  i128 qa = floor_div(2 * u + n, 2 * n);
  i128 qb = floor_div(2 * v + n, 2 * n);
  EisInt q{narrow(qa), narrow(qb)};
  EisInt r = x - q * y;
  return {q, r};
}

EisInt mod(EisInt x, EisInt y) { return divmod(x, y).r; }

bool divides(EisInt d, EisInt x) {
  if (d.is_zero()) return x.is_zero();
  return divmod(x, d).r.is_zero();
}

EisInt exact_div(EisInt x, EisInt d) {
  DivMod qr = divmod(x, d);
  if (!qr.r.is_zero()) throw Error(ErrorKind::DivisionByZero, d.str() + " does not divide " + x.str());
  return qr.q;
}

LambdaSplit lambda_split(EisInt x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroInput, "lambda_split(0)");
  int k = 0;
  // x / lambda = x * conj(lambda) / 3
  while (divisible_by_lambda(x)) {
    x = exact_div(x, kLambda);
    ++k;
  }
  Associate as = primary_associate(x);
  // unit * x = primary, so x = unit^{-1} * primary
  EisInt uinv = conj(as.unit);
  return {uinv, k, as.primary};
}

EisInt gcd(EisInt x, EisInt y) {
  if (x.is_zero() && y.is_zero()) throw Error(ErrorKind::BothZero, "gcd(0, 0)");
  while (!y.is_zero()) {
    EisInt r = mod(x, y);
    x = y;
    y = r;
  }
  LambdaSplit s = lambda_split(x);
  return pow(kLambda, static_cast<unsigned>(s.k)) * s.primary;
}

bool coprime(EisInt x, EisInt y) { return is_unit(gcd(x, y)); }

ResidueClassMod9 reduce_mod9(EisInt x) {
  return {static_cast<int>(((x.a % 9) + 9) % 9), static_cast<int>(((x.b % 9) + 9) % 9)};
}

std::vector<ResidueClassMod9> classes_coprime_to_3() {
  std::vector<ResidueClassMod9> out;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      if ((a + b) % 3 != 0) out.push_back({a, b});
  return out;
}

std::vector<ResidueClassMod9> primary_classes_mod9() {
  std::vector<ResidueClassMod9> out;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) out.push_back({1 + 3 * x, 3 * y});
  return out;
}

bool ClassFilter::accepts(EisInt x) const {
  switch (kind) {
    case Kind::All: return true;
    case Kind::Primary: return is_primary(x);
    case Kind::Mod9: return reduce_mod9(x) == cls;
  }
  return false;
}

namespace {
void sort_by_norm(std::vector<EisInt>& v) {
  std::vector<std::pair<i64, EisInt>> keyed;
  keyed.reserve(v.size());
  for (auto& x : v) keyed.emplace_back(norm(x), x);
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = keyed[i].second;
}
}  // namespace

std::vector<EisInt> enumerate_by_norm(i64 bound, ClassFilter filter) {
  std::vector<EisInt> out;
  if (bound <= 0) return out;
  if (filter.kind == ClassFilter::Kind::Primary) return enumerate_primary(bound);
  i64 box = static_cast<i64>(std::ceil(2.0 * std::sqrt(static_cast<double>(bound))));
  for (i64 a = -box; a <= box; ++a)
    for (i64 b = -box; b <= box; ++b) {
      EisInt x{a, b};
      i64 n = norm(x);
      if (n > 0 && n <= bound && filter.accepts(x)) out.push_back(x);
    }
  sort_by_norm(out);
  return out;
}

// N(a + b w) >= 3 a^2 / 4 and >= 3 b^2 / 4, so |a|, |b| <= sqrt(4 bound / 3).
std::vector<EisInt> enumerate_primary(i64 bound) {
  std::vector<EisInt> out;
  if (bound <= 0) return out;
  i64 box = static_cast<i64>(std::sqrt(4.0 * static_cast<double>(bound) / 3.0)) + 2;
  out.reserve(static_cast<std::size_t>(0.45 * static_cast<double>(bound)) + 16);
  i64 a0 = -box - mod3(-box) + 1;  // smallest a >= -box-2 with a = 1 mod 3
  for (i64 a = a0; a <= box; a += 3) {
    i64 b0 = -box - mod3(-box);
    for (i64 b = b0; b <= box; b += 3) {
      i128 n = i128(a) * a - i128(a) * b + i128(b) * b;
      if (n > 0 && n <= bound) out.push_back({a, b});
    }
  }
  sort_by_norm(out);
  return out;
}

EisInt parse_eis(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stoll(s), 0};
    return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "cannot parse Eisenstein integer '" + s + "'");
  }
}

}  // namespace cml
