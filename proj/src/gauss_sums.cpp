#include "cml/gauss_sums.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <algorithm>
#include <sstream>

#include "cml/parallel.hpp"

namespace cml {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

i64 posmod(i128 k, i64 n) {
  i128 r = k % n;
  if (r < 0) r += n;
  return static_cast<i64>(r);
}

const cplx kW[3] = {{1.0, 0.0}, {-0.5, std::numbers::sqrt3 / 2}, {-0.5, -std::numbers::sqrt3 / 2}};

void require_primary(EisInt c) {
  if (c.is_zero() || !is_primary(c)) throw Error(ErrorKind::BadModulus, c.str() + " is not 1 mod 3");
}

// a mod 3 centered exponent for a unit +-omega^j
int omega_exponent(EisInt u) {
  const auto& us = units();
  for (int i = 0; i < 6; ++i)
    if (us[i] == u) return i % 3;
  return 0;
}

u64 primitive_root(u64 p) {
  auto fs = factor_u64(p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (auto [q, e] : fs) {
      (void)e;
      if (powmod_u64(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

// Multiplication by g mod p for p < 2^26 without a hardware divide.
struct FastMulMod {
  u64 p, g;
  double inv;
  FastMulMod(u64 p_, u64 g_) : p(p_), g(g_), inv(1.0 / static_cast<double>(p_)) {}
  u64 operator()(u64 x) const {
    u64 a = x * g;
    auto q = static_cast<u64>(static_cast<double>(a) * inv);
    i64 r = static_cast<i64>(a - q * p);
    if (r < 0) r += static_cast<i64>(p);
    if (r >= static_cast<i64>(p)) r -= static_cast<i64>(p);
    return static_cast<u64>(r);
  }
};

// 2 * sum_{1 <= y <= (p-1)/2} omega^{chi[y]} cos(2 pi y / p)
cplx half_cosine_sum(const std::vector<std::uint8_t>& chi, u64 p) {
  double acc[3] = {0.0, 0.0, 0.0};
  u64 half = (p - 1) / 2;
  cplx step = std::polar(1.0, kTwoPi / static_cast<double>(p));
  for (u64 y0 = 1; y0 <= half; y0 += 1024) {
    cplx z = std::polar(1.0, kTwoPi * static_cast<double>(y0) / static_cast<double>(p));
    u64 y1 = std::min<u64>(half + 1, y0 + 1024);
    double zr = z.real(), zi = z.imag();
    const double sr = step.real(), si = step.imag();
    for (u64 y = y0; y < y1; ++y) {
      acc[chi[y]] += zr;
      double nr = zr * sr - zi * si;
      zi = zr * si + zi * sr;
      zr = nr;
    }
  }
  return 2.0 * (acc[0] * kW[0] + acc[1] * kW[1] + acc[2] * kW[2]);
}

cplx g3_split_prime(EisInt pi) {
  const u64 p = static_cast<u64>(norm(pi));
  const i64 pp = static_cast<i64>(p);
  if (p <= 13) return g3_direct({1, 0}, pi);
  // omega -> r = -a / b (mod p)
  u64 a = static_cast<u64>(posmod(pi.a, pp)), b = static_cast<u64>(posmod(pi.b, pp));
  u64 binv = powmod_u64(b, p - 2, p);
  u64 r = (p - (a * binv % p)) % p;
  u64 g = primitive_root(p);
  u64 gc = powmod_u64(g, (p - 1) / 3, p);
  int kg = (gc == r) ? 1 : 2;
  std::vector<std::uint8_t> chi(p, 0);
  const u64 order = p - 1;
  constexpr int kChains = 4;
  const u64 len = (order + kChains - 1) / kChains;
  FastMulMod mul(p, g);
  std::array<u64, kChains> x{};
  std::array<int, kChains> lab{};
  for (int i = 0; i < kChains; ++i) {
    u64 j0 = std::min<u64>(order, i * len);
    x[i] = powmod_u64(g, j0, p);
    lab[i] = static_cast<int>((j0 % 3) * kg % 3);
  }
  for (u64 s = 0; s < len; ++s) {
    for (int i = 0; i < kChains; ++i) {
      if (i * len + s >= order) continue;
      chi[x[i]] = static_cast<std::uint8_t>(lab[i]);
      x[i] = mul(x[i]);
      lab[i] += kg;
      if (lab[i] >= 3) lab[i] -= 3;
    }
  }
  // sum_x chi(x) e(x t / p) = conj(chi(t)) sum_y chi(y) e(y / p), t = Tr(pi)
  u64 t = static_cast<u64>(posmod(trace(pi), pp));
  cplx s = half_cosine_sum(chi, p);
  return std::conj(kW[chi[t]]) * s;
}

struct Fp2 {
  i64 p;
  EisInt mul(EisInt x, EisInt y) const {
    i64 ac = x.a * y.a % p, bd = x.b * y.b % p;
    i64 ad = x.a * y.b % p, bc = x.b * y.a % p;
    return {posmod(ac - bd, p), posmod(ad + bc - bd, p)};
  }
  EisInt pow(EisInt x, u64 e) const {
    EisInt r{1, 0};
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
};

cplx g3_inert_prime(EisInt pi) {
  const i64 p = -pi.a;
  if (p <= 11) return g3_direct({1, 0}, pi);
  Fp2 F{p};
  const u64 order = static_cast<u64>(p * p - 1);
  auto fs = factor_u64(order);
  EisInt gen{};
  for (i64 a = 0; a < p && gen.is_zero(); ++a)
    for (i64 b = 1; b < p; ++b) {
      EisInt cand{a, b};
      bool ok = true;
      for (auto [q, e] : fs) {
        (void)e;
        if (F.pow(cand, order / q) == EisInt{1, 0}) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen = cand;
        break;
      }
    }
  EisInt c = F.pow(gen, order / 3);
  int kg = (c == EisInt{0, 1}) ? 1 : 2;
  // e(Tr(d / -p)) = e(-(2x - y) / p); bucket by u = (2x - y) mod p
  std::vector<std::array<i64, 3>> cnt(static_cast<std::size_t>(p), {0, 0, 0});
  EisInt x{1, 0};
  int lab = 0;
  for (u64 j = 0; j < order; ++j) {
    cnt[static_cast<std::size_t>(posmod(2 * x.a - x.b, p))][lab]++;
    x = F.mul(x, gen);
    lab += kg;
    if (lab >= 3) lab -= 3;
  }
  cplx s{0.0, 0.0};
  for (i64 u = 0; u < p; ++u) {
    cplx w = double(cnt[u][0]) * kW[0] + double(cnt[u][1]) * kW[1] + double(cnt[u][2]) * kW[2];
    s += w * e_frac(-u, p);
  }
  return s;
}

}  // namespace

cplx e_frac(i64 k, i64 n) {
  i64 r = posmod(k, n);
  if (2 * r > n) r -= n;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(n));
}

cplx e_check(EisInt num, EisInt den) {
  EisInt dc = conj(den);
  i128 ac = i128(num.a) * dc.a, bd = i128(num.b) * dc.b;
  i128 u = ac - bd;
  i128 v = i128(num.a) * dc.b + i128(num.b) * dc.a - bd;
  i128 tr = 2 * u - v;
  i64 n = norm(den);
  return e_frac(posmod(tr, n), n);
}

cplx g3_direct(EisInt mu, EisInt c, i64 cap) {
  require_primary(c);
  const i64 n = norm(c);
  if (n > cap) throw Error(ErrorKind::CapExceeded, "N(c) = " + std::to_string(n) + " exceeds direct cap");
  i64 g = std::gcd(std::llabs(c.a), std::llabs(c.b));
  // phase index Tr(mu d conj(c)) = x Tr(w) + y Tr(w omega), w = mu conj(c)
  EisInt w = mu * conj(c);
  i64 t0 = posmod(trace(w), n), t1 = posmod(trace(w * kOmega), n);
  KahanComplex acc;
  for (i64 y = 0; y < g; ++y)
    for (i64 x = 0; x < n / g; ++x) {
      CubicSymbolValue v = symbol({x, y}, c);
      if (v.zero) continue;
      i64 k = posmod(i128(x) * t0 + i128(y) * t1, n);
      acc.add(kW[v.k] * e_frac(k, n));
    }
  return acc.value();
}

cplx g3_prime(EisInt pi) {
  if (!is_primary_prime(pi)) throw Error(ErrorKind::NotPrimaryPrime, pi.str());
  if (pi.b == 0 && pi.a < 0 && is_prime_u64(static_cast<u64>(-pi.a)) && (-pi.a) % 3 == 2) return g3_inert_prime(pi);
  return g3_split_prime(pi);
}

void GaussTable::ensure(i64 bound, const std::string& cache_path, int workers) {
  std::lock_guard<std::mutex> lock(mu_);
  if (bound <= bound_) return;
  if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
    std::ifstream is(cache_path);
    std::string line;
    i64 file_bound = 0;
    std::getline(is, line);
    if (line.rfind("# gauss table bound=", 0) == 0) file_bound = std::stoll(line.substr(20));
    if (file_bound >= bound) {
      while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'p') continue;
        std::istringstream ls(line);
        u64 p;
        i64 a, b;
        double re, im;
        char c;
        ls >> p >> c >> a >> c >> b >> c >> re >> c >> im;
        if (!ls) throw Error(ErrorKind::CacheMismatch, "bad gauss cache row: " + line);
        if (b == 0 && a < 0)
          inert_[p] = {re, im};
        else
          split_[p] = {{a, b}, {re, im}};
      }
      bound_ = file_bound;
      return;
    }
  }
  const SpfTable& t = spf_table(static_cast<std::uint32_t>(std::max<i64>(bound, 16)));
  std::vector<std::pair<u64, EisInt>> todo;
  for (std::uint32_t p : t.primes()) {
    if (static_cast<i64>(p) > bound) break;
    if (p == 3) continue;
    if (p % 3 == 1) {
      if (!split_.count(p)) todo.emplace_back(p, split_rational_prime(p).pi);
    } else if (static_cast<i64>(p) * p <= bound) {
      if (!inert_.count(p)) todo.emplace_back(p, EisInt{-static_cast<i64>(p), 0});
    }
  }
  std::vector<cplx> vals(todo.size());
  // large primes first so shards stay balanced
  parallel_for(todo.size(), workers, [&](std::size_t i) {
    std::size_t j = todo.size() - 1 - i;
    vals[j] = g3_prime(todo[j].second);
  });
  for (std::size_t i = 0; i < todo.size(); ++i) {
    if (todo[i].second.b == 0 && todo[i].second.a < 0)
      inert_[todo[i].first] = vals[i];
    else
      split_[todo[i].first] = {todo[i].second, vals[i]};
  }
  bound_ = bound;
  if (!cache_path.empty()) {
    std::filesystem::path cp(cache_path);
    if (cp.has_parent_path()) std::filesystem::create_directories(cp.parent_path());
    std::ofstream os(cache_path);
    os << "# gauss table bound=" << bound << "\np,a,b,re,im\n" << std::setprecision(17);
    std::vector<u64> ps;
    for (auto& [p, e] : split_) ps.push_back(p);
    for (auto& [p, v] : inert_) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    for (u64 p : ps) {
      if (p % 3 == 1) {
        const Entry& e = split_.at(p);
        os << p << ',' << e.pi.a << ',' << e.pi.b << ',' << e.g.real() << ',' << e.g.imag() << '\n';
      } else {
        cplx v = inert_.at(p);
        os << p << ',' << -static_cast<i64>(p) << ",0," << v.real() << ',' << v.imag() << '\n';
      }
    }
  }
}

cplx GaussTable::value(EisInt pi) const {
  i64 n = norm(pi);
  if (n <= bound_) {
    if (pi.b == 0 && pi.a < 0 && (-pi.a) % 3 == 2) {
      auto it = inert_.find(static_cast<u64>(-pi.a));
      if (it != inert_.end()) return it->second;
    } else {
      auto it = split_.find(static_cast<u64>(n));
      if (it != split_.end()) return it->second.pi == pi ? it->second.g : std::conj(it->second.g);
    }
  }
  return g3_prime(pi);
}

GaussTable& gauss_table() {
  static GaussTable table;
  return table;
}

cplx g3_local(EisInt pi, int k, int l, cplx g_pi) {
  if (l == 0) return 1.0;
  const double q = static_cast<double>(norm(pi));
  if (l <= k) return (l % 3 == 0) ? std::pow(q, l) - std::pow(q, l - 1) : 0.0;
  if (l == k + 1) {
    double qk = std::pow(q, k);
    switch (l % 3) {
      case 0: return -qk;
      case 1: return qk * g_pi;
      default: return qk * std::conj(g_pi);
    }
  }
  return 0.0;
}

cplx g3_fast(EisInt mu, EisInt c) {
  require_primary(c);
  if (c == EisInt{1, 0}) return 1.0;
  return g3_fast(mu, c, factor(c));
}

cplx g3_fast(EisInt mu, EisInt c, const EisFactorization& fc) {
  require_primary(c);
  cplx total = 1.0;
  const auto& ps = fc.primes;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const EisInt pi = ps[i].pi;
    const int l = ps[i].e;
    cplx local;
    if (mu.is_zero()) {
      local = g3_local(pi, l, l, 0.0);
    } else {
      int k = 0;
      EisInt m = mu;
      while (k < l) {
        DivMod qr = divmod(m, pi);
        if (!qr.r.is_zero()) break;
        m = qr.q;
        ++k;
      }
      if (k >= l) {
        local = g3_local(pi, l, l, 0.0);
      } else {
        cplx gpi = (l == k + 1 && l % 3 != 0) ? gauss_table().value(pi) : cplx{0.0, 0.0};
        local = g3_local(pi, k, l, gpi);
        if (local != 0.0) local *= std::conj(symbol(m, pi).pow(l).to_complex());
      }
    }
    if (local == 0.0) return 0.0;
    total *= local;
    // g3(mu, c1 c2) = conj(chi_{c2}(c1)) g3(mu, c1) g3(mu, c2)
    for (std::size_t j = 0; j < i; ++j) {
      CubicSymbolValue s = symbol(ps[j].pi, pi).pow(ps[j].e * l);
      total *= std::conj(s.to_complex());
    }
  }
  return total;
}

double cube_relation_check(EisInt pi, bool require_split) {
  if (!is_primary_prime(pi)) throw Error(ErrorKind::NotPrimaryPrime, pi.str());
  if (require_split && !is_prime_u64(static_cast<u64>(norm(pi)))) throw Error(ErrorKind::NotSplit, pi.str());
  cplx g = gauss_table().value(pi);
  EisInt rhs = pi * pi * conj(pi);
  return std::abs(g * g * g + cplx(static_cast<double>(rhs.a), 0.0) + static_cast<double>(rhs.b) * kW[1]);
}

cplx h3_tilde(EisInt mu, EisInt c1, EisInt c2, i64 cap) {
  require_primary(c1);
  require_primary(c2);
  if (!is_squarefree(c1)) throw Error(ErrorKind::BadModulus, "c1 must be squarefree");
  EisInt m = c1 * c2;
  EisInt c = c1 * c2 * c2;
  const i64 n = norm(m);
  if (n > cap) throw Error(ErrorKind::CapExceeded, "N(c1 c2) exceeds direct cap");
  i64 g = std::gcd(std::llabs(m.a), std::llabs(m.b));
  EisInt w = mu * conj(m);
  i64 t0 = posmod(trace(w), n), t1 = posmod(trace(w * kOmega), n);
  KahanComplex acc;
  for (i64 y = 0; y < g; ++y)
    for (i64 x = 0; x < n / g; ++x) {
      CubicSymbolValue v = symbol({x, y}, c);
      if (v.zero) continue;
      acc.add(kW[v.k] * e_frac(posmod(i128(x) * t0 + i128(y) * t1, n), n));
    }
  return acc.value() / std::sqrt(static_cast<double>(n));
}

RootNumber root_number(EisInt q1, EisInt q2, bool with_direct) {
  if (!is_primary(q1) || !is_primary(q2)) throw Error(ErrorKind::NotInFamily, "q1, q2 must be primary");
  EisInt m = q1 * q2;
  EisInt q = m * q2;
  if (q == EisInt{1, 0} || !is_squarefree(m) || !(reduce_mod9(q) == ResidueClassMod9{1, 0}))
    throw Error(ErrorKind::NotInFamily, "q1 q2^2 = " + q.str() + " is not in the family");
  RootNumber out{};
  out.product = g3_tilde({1, 0}, q1) * std::conj(g3_tilde({1, 0}, q2));
  if (with_direct) {
    // W = sum_{x mod m, coprime} chi_q(x) e(Tr(x / (lambda m)))
    const i64 n = norm(m);
    i64 g = std::gcd(std::llabs(m.a), std::llabs(m.b));
    EisInt den = kLambda * m;
    EisInt w = conj(den);
    const i64 nd = norm(den);
    i64 t0 = posmod(trace(w), nd), t1 = posmod(trace(w * kOmega), nd);
    KahanComplex acc;
    for (i64 y = 0; y < g; ++y)
      for (i64 x = 0; x < n / g; ++x) {
        CubicSymbolValue v = symbol({x, y}, q);
        if (v.zero) continue;
        acc.add(kW[v.k] * e_frac(posmod(i128(x) * t0 + i128(y) * t1, nd), nd));
      }
    out.direct = acc.value() / std::sqrt(static_cast<double>(n));
  }
  return out;
}

// r = +-omega^j lambda^m c d^3 with c squarefree primary, d primary.
cplx tau3(EisInt r) {
  if (r.is_zero()) throw Error(ErrorKind::ZeroInput, "tau3(0)");
  LambdaSplit ls = lambda_split(r);
  int j = omega_exponent(ls.unit);
  EisInt c{1, 0}, d{1, 0};
  for (const auto& pp : factor(ls.primary).primes) {
    if (pp.e % 3 == 2) return 0.0;
    if (pp.e % 3 == 1) c = c * pp.pi;
    d = d * pow(pp.pi, static_cast<unsigned>(pp.e / 3));
  }
  const double ratio = std::sqrt(static_cast<double>(norm(d)) / static_cast<double>(norm(c)));
  const int m = ls.k;
  if (m % 3 == 0) {
    if (j != 0) return 0.0;
    int n = m / 3 + 1;
    return std::conj(g3_fast({1, 0}, c)) * ratio * std::pow(3.0, (n + 5) / 2.0);
  }
  if (m % 3 == 2) {
    int n = (m + 4) / 3;
    EisInt shift = pow(kOmega, static_cast<unsigned>(j)) * kLambda * kLambda;
    cplx phase = (j == 0) ? cplx{1.0, 0.0} : e_frac(j == 1 ? -1 : 1, 9);
    return phase * std::conj(g3_fast(shift, c)) * ratio * std::pow(3.0, n / 2.0 + 2.0);
  }
  return 0.0;
}

}  // namespace cml
