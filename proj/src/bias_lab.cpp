#include "cml/bias_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "cml/errors.hpp"
#include "cml/euler_products.hpp"
#include "cml/factorization.hpp"
#include "cml/parallel.hpp"

namespace cml {

namespace {

const cplx kW[3] = {{1.0, 0.0}, {-0.5, std::numbers::sqrt3 / 2}, {-0.5, -std::numbers::sqrt3 / 2}};

std::vector<EisInt> distinct_primes(EisInt x) {
  std::vector<EisInt> out;
  if (norm(x) <= 1) return out;
  for (const auto& pp : factor(x).primes) out.push_back(pp.pi);
  return out;
}

bool coprime_to_list(const EisFactorization& f, const std::vector<EisInt>& ps) {
  for (const auto& pp : f.primes)
    for (const EisInt& p : ps)
      if (pp.pi == p) return false;
  return true;
}

// Primary divisors of a squarefree primary alpha with their Moebius signs.
std::vector<std::pair<EisInt, int>> squarefree_divisors(EisInt alpha) {
  std::vector<std::pair<EisInt, int>> out{{EisInt{1, 0}, 1}};
  for (const EisInt& p : distinct_primes(alpha)) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back({out[i].first * p, -out[i].second});
  }
  return out;
}

cplx delta(EisInt alpha, cplx s) {
  cplx d = 1.0;
  for (const EisInt& p : distinct_primes(alpha)) d *= 1.0 - std::pow(static_cast<double>(norm(p)), 2.0 - 3.0 * s);
  return d;
}

cplx npow(EisInt x, cplx e) { return std::pow(static_cast<double>(norm(x)), e); }

void check_bias_cap(i64 T) {
  if (T > kBiasCap) throw Error(ErrorKind::CapExceeded, "T exceeds " + std::to_string(kBiasCap));
}

}  // namespace

cplx psi_truncated(EisInt r, cplx s, i64 T, EisInt coprime_to, int workers) {
  if (r == EisInt{0, 0}) throw Error(ErrorKind::ZeroInput, "psi needs r != 0");
  if (s.real() <= 1.0) throw Error(ErrorKind::Config, "psi_truncated needs Re s > 1");
  check_bias_cap(T);
  const IdealIndex& ix = ideal_index(T);
  const std::size_t n = ix.count_upto(T);
  const auto ps = distinct_primes(coprime_to);
  const auto& el = ix.elements();
  return sharded_sum(n, workers, [&](std::size_t i) -> cplx {
    const EisFactorization f = ix.factorization(i);
    if (!ps.empty() && !coprime_to_list(f, ps)) return 0.0;
    const cplx g = g3_fast(r, el[i], f);
    if (g == cplx(0.0)) return 0.0;
    return g * std::pow(static_cast<double>(ix.norms()[i]), -s);
  });
}

cplx polar_prediction(EisInt r) {
  if (r == EisInt{0, 0}) throw Error(ErrorKind::ZeroInput, "r must be nonzero");
  return c0() * tau3(r) / std::pow(static_cast<double>(norm(r)), 1.0 / 6.0);
}

BiasReport bias_scan(EisInt k, i64 Tmax, int workers, i64 t_min) {
  if (k == EisInt{0, 0}) throw Error(ErrorKind::ZeroInput, "k must be nonzero");
  check_bias_cap(Tmax);
  BiasReport rep;
  rep.k = k;
  std::vector<i64> pts;
  for (i64 t = Tmax; t >= t_min || pts.size() < 5; t /= 2) {
    pts.push_back(t);
    if (t < 2) break;
  }
  std::reverse(pts.begin(), pts.end());
  const IdealIndex& ix = ideal_index(Tmax);
  const std::size_t n = ix.count_upto(Tmax);
  std::vector<cplx> vals(n);
  const auto& el = ix.elements();
  const auto& isq = ix.inv_sqrt_norms();
  parallel_for(n, workers, [&](std::size_t i) { vals[i] = g3_fast(k, el[i], ix.factorization(i)) * isq[i]; });
  const cplx pred_coeff = 1.2 * polar_prediction(k);
  KahanComplex acc;
  std::size_t i = 0;
  for (i64 t : pts) {
    const std::size_t upto = ix.count_upto(t);
    for (; i < upto; ++i) acc.add(vals[i]);
    rep.T.push_back(static_cast<double>(t));
    rep.partial.push_back(acc.value());
    const cplx p = pred_coeff * std::pow(static_cast<double>(t), 5.0 / 6.0);
    rep.predicted.push_back(p);
    rep.ratio.push_back(std::abs(p) > 0 ? std::abs(acc.value()) / std::abs(p) : std::numeric_limits<double>::quiet_NaN());
  }
  double su = 0, sv = 0, suu = 0, suv = 0, m = 0;
  for (std::size_t j = 0; j < rep.T.size(); ++j) {
    if (std::abs(rep.partial[j]) <= 0.0) continue;
    const double u = std::log(rep.T[j]), v = std::log(std::abs(rep.partial[j]));
    su += u;
    sv += v;
    suu += u * u;
    suv += u * v;
    m += 1;
  }
  rep.exponent = m >= 2 ? (m * suv - su * sv) / (m * suu - su * su) : std::numeric_limits<double>::quiet_NaN();
  rep.final_ratio = rep.ratio.back();
  return rep;
}

// ---- coprimality removal -------------------------------------------------------

namespace {

void require_sf_primary(EisInt x, const char* what) {
  if (!is_primary(x) || !is_squarefree(x)) throw Error(ErrorKind::Config, std::string(what) + " must be squarefree primary");
}

}  // namespace

CoprimalityResult coprimality_identity_check(int item, EisInt alpha, EisInt beta, EisInt r, cplx s, i64 T,
                                             int workers) {
  require_sf_primary(alpha, "alpha");
  if (!is_primary(beta)) throw Error(ErrorKind::Config, "beta must be primary");
  if (!coprime(alpha, beta * r)) throw Error(ErrorKind::Config, "alpha must be coprime to beta r");
  CoprimalityResult res;
  res.budget = 10.0 / std::sqrt(static_cast<double>(T));
  const EisInt ab = alpha * beta;
  const cplx da = delta(alpha, s);
  if (item == 1) {
    res.item = "i";
    const EisInt rho = alpha * alpha * r;
    res.lhs = psi_truncated(rho, s, T, ab, workers) * da;
    res.rhs = psi_truncated(rho, s, T, beta, workers);
  } else if (item == 2) {
    res.item = "ii";
    res.lhs = psi_truncated(alpha * r, s, T, ab, workers) * da;
    KahanComplex acc;
    for (const auto& [d, mu] : squarefree_divisors(alpha)) {
      const EisInt x = exact_div(alpha * r, d);
      acc.add(static_cast<double>(mu) * npow(d, 1.0 - 2.0 * s) * std::conj(g3_fast(x, d)) *
              psi_truncated(x, s, T, beta, workers));
    }
    res.rhs = acc.value();
  } else if (item == 3) {
    res.item = "iii";
    res.lhs = psi_truncated(r, s, T, ab, workers) * da;
    KahanComplex acc;
    for (const auto& [d, mu] : squarefree_divisors(alpha))
      acc.add(static_cast<double>(mu) * npow(d, -s) * g3_fast(r, d) * psi_truncated(r * d, s, T, beta, workers));
    res.rhs = acc.value();
  } else {
    throw Error(ErrorKind::Config, "item must be 1, 2 or 3");
  }
  res.residual = std::abs(res.lhs - res.rhs);
  return res;
}

CoprimalityResult coprimality_corollary_check(EisInt a, EisInt b, EisInt c, EisInt r, cplx s, i64 T, int workers) {
  const EisInt abc = a * b * c;
  require_sf_primary(abc, "abc");
  if (!is_primary(a) || !is_primary(b) || !is_primary(c)) throw Error(ErrorKind::Config, "a, b, c must be primary");
  if (!coprime(abc, r)) throw Error(ErrorKind::Config, "abc must be coprime to r");
  CoprimalityResult res;
  res.item = "cor";
  res.budget = 10.0 / std::sqrt(static_cast<double>(T));
  const EisInt rho = a * b * b * r;
  res.lhs = psi_truncated(rho, s, T, abc, workers) * delta(abc, s);
  KahanComplex acc;
  for (const auto& [d, mud] : squarefree_divisors(a))
    for (const auto& [e, mue] : squarefree_divisors(c)) {
      const EisInt x = exact_div(rho, d);
      acc.add(static_cast<double>(mud * mue) * static_cast<double>(norm(d)) * npow(d * d * e, -s) *
              std::conj(g3_fast(x, d)) * g3_fast(x, e) * psi_truncated(x * e, s, T, {1, 0}, workers));
    }
  res.rhs = acc.value();
  res.residual = std::abs(res.lhs - res.rhs);
  return res;
}

std::vector<CoprimalityResult> coprimality_random_suite(int n, i64 T, unsigned seed, int workers) {
  std::vector<EisInt> primes;
  for (const EisInt& x : enumerate_primary(60))
    if (norm(x) > 1 && is_primary_prime(x)) primes.push_back(x);
  std::vector<EisInt> smalls;
  for (const EisInt& x : enumerate_primary(30)) smalls.push_back(x);
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<EisInt>& v) { return v[rng() % v.size()]; };
  std::vector<CoprimalityResult> out;
  const cplx s{2.0, 0.0};
  for (int i = 0; i < n; ++i) {
    const int item = i % 4;
    const EisInt unit = units()[rng() % 6];
    EisInt lam_part{1, 0};
    for (int j = static_cast<int>(rng() % 3); j > 0; --j) lam_part = lam_part * kLambda;
    if (item < 3) {
      EisInt alpha = pick(primes);
      if (rng() % 2) {
        EisInt p2 = pick(primes);
        if (norm(p2) != norm(alpha) || !(p2 == alpha)) {
          if (!(p2 == alpha)) alpha = alpha * p2;
        }
      }
      EisInt beta, core;
      do beta = pick(smalls);
      while (!coprime(alpha, beta));
      do core = pick(smalls);
      while (!coprime(alpha, core));
      const EisInt r = unit * lam_part * core;
      out.push_back(coprimality_identity_check(item + 1, alpha, beta, r, s, T, workers));
    } else {
      EisInt a = pick(primes), b, c;
      do b = pick(primes);
      while (b == a);
      do c = pick(primes);
      while (c == a || c == b);
      if (rng() % 2) b = {1, 0};
      EisInt core;
      do core = pick(smalls);
      while (!coprime(a * b * c, core));
      out.push_back(coprimality_corollary_check(a, b, c, unit * lam_part * core, s, T, workers));
    }
  }
  return out;
}

// ---- large sieve -------------------------------------------------------------

SieveReport large_sieve_ratio(i64 A, i64 B, int trials, unsigned seed, int workers, bool zero_coefficients) {
  if (A < 1 || B < 1 || A > 5000 || B > 5000) throw Error(ErrorKind::Config, "A and B must lie in [1, 5000]");
  if (trials < 1) throw Error(ErrorKind::Config, "trials must be positive");
  std::vector<EisInt> as, bs;
  for (const EisInt& x : enumerate_primary(A))
    if (is_squarefree(x)) as.push_back(x);
  for (const EisInt& x : enumerate_primary(B))
    if (is_squarefree(x)) bs.push_back(x);
  const std::size_t na = as.size(), nb = bs.size();
  std::vector<std::uint8_t> chi(na * nb);
  parallel_for(na, workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < nb; ++j) {
      CubicSymbolValue v = symbol(bs[j], as[i]);
      chi[i * nb + j] = v.zero ? kChiZero : static_cast<std::uint8_t>(v.k);
    }
  });
  SieveReport rep;
  rep.count_a = na;
  rep.count_b = nb;
  const double scale = static_cast<double>(A) + static_cast<double>(B) + std::pow(double(A) * double(B), 2.0 / 3.0);
  rep.ratios.resize(trials);
  parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
    std::mt19937_64 rng(static_cast<u64>(seed) * 1000003ull + t);
    std::vector<double> lam(nb);
    double l2 = 0.0;
    for (auto& x : lam) {
      x = zero_coefficients ? 0.0 : (rng() & 1 ? 1.0 : -1.0);
      l2 += x * x;
    }
    double lhs = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
      double part[3] = {0, 0, 0};
      const std::uint8_t* row = &chi[i * nb];
      for (std::size_t j = 0; j < nb; ++j)
        if (row[j] != kChiZero) part[row[j]] += lam[j];
      const cplx z = part[0] * kW[0] + part[1] * kW[1] + part[2] * kW[2];
      lhs += std::norm(z);
    }
    rep.ratios[t] = l2 > 0 ? lhs / (l2 * scale) : 0.0;
  });
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  return rep;
}

// ---- Poisson summation ------------------------------------------------------------

cplx psi_ddot_direct(EisInt q, EisInt k) {
  if (!is_primary(q)) throw Error(ErrorKind::BadModulus, q.str());
  const i64 n = norm(q);
  if (n == 1) return 1.0;
  const EisInt nine_lambda{9, 18};
  const i64 g = std::gcd(std::llabs(q.a), std::llabs(q.b));
  KahanComplex acc;
  for (i64 y = 0; y < g; ++y)
    for (i64 x = 0; x < n / g; ++x) {
      const EisInt b{x, y};
      CubicSymbolValue v = symbol(nine_lambda * b, q);
      if (v.zero) continue;
      acc.add(kW[v.k] * e_check(EisInt{0, 0} - k * b, q));
    }
  return acc.value();
}

PoissonReport poisson_check(EisInt q, EisInt c, double M) {
  if (!is_primary(q)) throw Error(ErrorKind::BadModulus, "q must be primary");
  const i64 nq = norm(q);
  if (nq > 50) throw Error(ErrorKind::CapExceeded, "poisson_check needs N(q) <= 50");
  const TestKind V = TestKind::Bump;
  const ResidueClassMod9 cls = reduce_mod9(c);
  auto psi = [&](EisInt m) -> cplx {
    if (nq == 1) return 1.0;
    CubicSymbolValue v = symbol(m, q);
    return v.zero ? cplx(0.0) : kW[v.k];
  };
  PoissonReport rep;
  KahanComplex lhs;
  for (const EisInt& m : enumerate_by_norm(static_cast<i64>(std::ceil(2.0 * M)))) {
    if (!(reduce_mod9(m) == cls)) continue;
    const double v = test_function(V, static_cast<double>(norm(m)) / M);
    if (v != 0.0) lhs.add(psi(m) * v);
  }
  rep.lhs = lhs.value();

  const double pre = 4.0 * std::numbers::pi * M / (std::pow(3.0, 4.5) * static_cast<double>(nq));
  const EisInt nine_lambda{9, 18};
  const EisInt cq2 = c * q * q;
  const cplx chi9l = psi(nine_lambda);
  std::map<i64, double> vdd;
  std::map<std::pair<i64, i64>, cplx> gcache;
  auto psi_ddot = [&](EisInt k) -> cplx {
    if (nq == 1) return 1.0;
    const EisInt kr = mod(k, q);
    auto key = std::make_pair(kr.a, kr.b);
    auto it = gcache.find(key);
    if (it != gcache.end()) return it->second;
    const cplx v = chi9l * g3_direct(EisInt{0, 0} - kr, q);
    gcache.emplace(key, v);
    return v;
  };
  KahanComplex rhs;
  // enumerate_by_norm skips k = 0; each round doubles the norm bound on k
  rhs.add(psi_ddot(EisInt{0, 0}) * v_ddot(V, 0.0));
  rep.k_terms = 1;
  i64 done = 0;
  double U = 50.0;
  double last_change = 0.0;
  for (int round = 0; round < 16; ++round, U *= std::numbers::sqrt2) {
    const i64 kbound = static_cast<i64>(std::floor(U * U * static_cast<double>(nq) / M));
    KahanComplex shell;
    for (const EisInt& k : enumerate_by_norm(kbound)) {
      const i64 nk = norm(k);
      if (nk <= done) continue;
      auto it = vdd.find(nk);
      if (it == vdd.end())
        it = vdd.emplace(nk, v_ddot(V, std::sqrt(static_cast<double>(nk) * M / static_cast<double>(nq)))).first;
      if (it->second == 0.0) continue;
      shell.add(psi_ddot(k) * e_check(EisInt{0, 0} - k * cq2, nine_lambda) * it->second);
      ++rep.k_terms;
    }
    rhs.add(shell.value());
    done = kbound;
    rep.k_norm_bound = kbound;
    last_change = pre * std::abs(shell.value());
    if (round > 0 && last_change <= 1e-9 * std::max(1.0, pre * std::abs(rhs.value()))) break;
  }
  rep.rhs = pre * rhs.value();
  rep.truncation_change = last_change;
  // the k = 0 term sets the scale when both sides nearly vanish
  const double scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), pre * v_ddot(V, 0.0)});
  rep.residual = std::abs(rep.lhs - rep.rhs) / scale;
  return rep;
}

}  // namespace cml
