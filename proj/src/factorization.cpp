#include "cml/factorization.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace cml {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((unsigned __int128)a * b % m); }

bool mr_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod_u64(a % n, d, n);
  if (x == 0 || x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

u64 pollard_brent(u64 n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  std::uniform_int_distribution<u64> dist(1, n - 1);
  while (true) {
    u64 y = dist(rng), c = dist(rng), m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(u64 n, std::vector<u64>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n, rng);
  factor_rec(d, out, rng);
  factor_rec(n / d, out, rng);
}

std::mutex g_spf_mutex;
std::vector<std::unique_ptr<SpfTable>> g_spf_tables;

bool norm_less(const EisInt& x, const EisInt& y) {
  i64 nx = norm(x), ny = norm(y);
  if (nx != ny) return nx < ny;
  return x < y;
}

}  // namespace

u64 powmod_u64(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (a % n == 0) continue;
    if (mr_witness(n, a, d, s)) return false;
  }
  return true;
}

SpfTable::SpfTable(std::uint32_t limit) : limit_(limit), spf_(limit + 1, 0) {
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      std::uint64_t v = std::uint64_t(p) * i;
      if (p > spf_[i] || v > limit) break;
      spf_[v] = p;
    }
  }
}

const SpfTable& spf_table(std::uint32_t limit) {
  std::lock_guard<std::mutex> lock(g_spf_mutex);
  for (auto& t : g_spf_tables)
    if (t->limit() >= limit) return *t;
  std::uint32_t want = std::max<std::uint32_t>(limit, 1u << 16);
  g_spf_tables.push_back(std::make_unique<SpfTable>(want));
  return *g_spf_tables.back();
}

// Trial division to 10^6, Pollard-Brent on whatever is left.
std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<u64> ps;
  if (n >= 2) {
    constexpr u64 kTrial = 1000000;
    const SpfTable& t = spf_table(static_cast<std::uint32_t>(kTrial));
    if (n <= t.limit()) {
      auto m = static_cast<std::uint32_t>(n);
      while (m > 1) {
        ps.push_back(t.spf(m));
        m /= t.spf(m);
      }
    } else {
      for (std::uint32_t p : t.primes()) {
        if (u64(p) * p > n) break;
        while (n % p == 0) {
          ps.push_back(p);
          n /= p;
        }
      }
      if (n > 1) {
        std::mt19937_64 rng(n);
        factor_rec(n, ps, rng);
      }
    }
  }
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<u64, int>> out;
  for (u64 p : ps) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

u64 cube_root_of_unity_mod(u64 p) {
  if (p % 3 != 1) throw Error(ErrorKind::NotSplit, std::to_string(p) + " is not 1 mod 3");
  std::mt19937_64 rng(p * 0x9E3779B97F4A7C15ULL + 7);
  std::uniform_int_distribution<u64> dist(2, p - 1);
  while (true) {
    u64 r = powmod_u64(dist(rng), (p - 1) / 3, p);
    if (r != 1) return r;
  }
}

SplitResult split_rational_prime(u64 p) {
  if (!is_prime_u64(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
  if (p == 3) return {SplitResult::Kind::Ramified, kLambda, kLambda};
  if (p % 3 == 2) {
    EisInt pi{-static_cast<i64>(p), 0};
    return {SplitResult::Kind::Inert, pi, pi};
  }
  u64 r = cube_root_of_unity_mod(p);
  EisInt g = gcd(EisInt{static_cast<i64>(p), 0}, EisInt{static_cast<i64>(r), -1});
  if (norm(g) != static_cast<i64>(p)) throw Error(ErrorKind::NotPrime, "split failed for " + std::to_string(p));
  EisInt pi = primary_associate(g).primary;
  EisInt pib = conj(pi);
  if (pib < pi) std::swap(pi, pib);
  return {SplitResult::Kind::Split, pi, pib};
}

EisInt EisFactorization::product() const {
  EisInt x = unit * pow(kLambda, static_cast<unsigned>(lambda_exp));
  for (const auto& pp : primes) x = x * pow(pp.pi, static_cast<unsigned>(pp.e));
  return x;
}

EisFactorization factor(EisInt x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroInput, "factor(0)");
  LambdaSplit ls = lambda_split(x);
  EisFactorization f;
  f.unit = ls.unit;
  f.lambda_exp = ls.k;
  EisInt c = ls.primary;
  for (auto [p, e] : factor_u64(static_cast<u64>(norm(c)))) {
    if (p % 3 == 2) {
      EisInt pi{-static_cast<i64>(p), 0};
      f.primes.push_back({pi, e / 2});
      c = exact_div(c, pow(pi, static_cast<unsigned>(e / 2)));
      continue;
    }
    SplitResult s = split_rational_prime(p);
    for (EisInt pi : {s.pi, s.pi_bar}) {
      int k = 0;
      while (k < e) {
        DivMod qr = divmod(c, pi);
        if (!qr.r.is_zero()) break;
        c = qr.q;
        ++k;
      }
      if (k > 0) f.primes.push_back({pi, k});
      e -= k;
    }
  }
  std::sort(f.primes.begin(), f.primes.end(),
            [](const PrimePower& u, const PrimePower& v) { return norm_less(u.pi, v.pi); });
  return f;
}

bool is_squarefree(EisInt x) {
  EisFactorization f = factor(x);
  if (f.lambda_exp > 1) return false;
  for (auto& pp : f.primes)
    if (pp.e > 1) return false;
  return true;
}

int mobius(EisInt x) {
  EisFactorization f = factor(x);
  if (f.lambda_exp > 1) return 0;
  int m = f.lambda_exp ? -1 : 1;
  for (auto& pp : f.primes) {
    if (pp.e > 1) return 0;
    m = -m;
  }
  return m;
}

i64 num_divisors(EisInt x) {
  EisFactorization f = factor(x);
  i64 d = f.lambda_exp + 1;
  for (auto& pp : f.primes) d *= pp.e + 1;
  return d;
}

EisInt radical(EisInt x) {
  EisFactorization f = factor(x);
  EisInt r = f.lambda_exp ? kLambda : EisInt{1, 0};
  for (auto& pp : f.primes) r = r * pp.pi;
  return r;
}

std::vector<EisInt> primary_divisors(const EisFactorization& f) {
  std::vector<EisInt> out{{1, 0}};
  for (auto& pp : f.primes) {
    std::size_t n = out.size();
    EisInt pk{1, 0};
    for (int k = 1; k <= pp.e; ++k) {
      pk = pk * pp.pi;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

bool is_primary_prime(EisInt pi) {
  if (!is_primary(pi)) return false;
  i64 n = norm(pi);
  if (is_prime_u64(static_cast<u64>(n))) return true;
  // inert: pi = -p with p = 2 (mod 3) prime
  return pi.b == 0 && pi.a < 0 && (-pi.a) % 3 == 2 && is_prime_u64(static_cast<u64>(-pi.a));
}

void write_split_cache(const std::string& path, u64 bound) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Config, "cannot write " + path);
  os << "# split primes p = 1 mod 3 up to " << bound << "\np,a,b\n";
  const SpfTable& t = spf_table(static_cast<std::uint32_t>(std::max<u64>(bound, 2)));
  for (std::uint32_t p : t.primes()) {
    if (p > bound) break;
    if (p % 3 != 1) continue;
    EisInt pi = split_rational_prime(p).pi;
    os << p << ',' << pi.a << ',' << pi.b << '\n';
  }
}

std::vector<std::pair<u64, EisInt>> read_split_cache(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Config, "cannot read " + path);
  std::vector<std::pair<u64, EisInt>> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'p') continue;
    std::istringstream ls(line);
    u64 p;
    i64 a, b;
    char c1, c2;
    if (!(ls >> p >> c1 >> a >> c2 >> b)) throw Error(ErrorKind::CacheMismatch, "bad split cache row: " + line);
    EisInt pi{a, b};
    if (norm(pi) != static_cast<i64>(p) || !is_primary(pi))
      throw Error(ErrorKind::CacheMismatch, "split cache row does not verify: " + line);
    out.emplace_back(p, pi);
  }
  return out;
}

}  // namespace cml
