#include "cml/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "cml/factorization.hpp"
#include "cml/parallel.hpp"

namespace cml {

namespace {

const cplx kW[3] = {{1.0, 0.0}, {-0.5, std::numbers::sqrt3 / 2}, {-0.5, -std::numbers::sqrt3 / 2}};

std::mutex g_index_mu;
std::vector<std::unique_ptr<IdealIndex>> g_indexes;

// Three real accumulators, one per cube root of unity.
struct RootAccumulator {
  KahanSum re[3];
  double abs_sum = 0.0;
  void add(std::uint8_t k, double v) {
    re[k].add(v);
    abs_sum += std::fabs(v);
  }
  cplx value(bool conjugate) const {
    cplx z = re[0].value() * kW[0] + re[1].value() * kW[1] + re[2].value() * kW[2];
    return conjugate ? std::conj(z) : z;
  }
};

}  // namespace

IdealIndex::IdealIndex(i64 bound) : bound_(bound) {
  elems_ = enumerate_primary(bound);
  const std::size_t n = elems_.size();
  norms_.resize(n);
  isq_.resize(n);
  prime_of_.assign(n, -1);
  cofactor_.assign(n, -1);
  std::unordered_map<EisInt, std::int32_t, EisHash> where;
  where.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    norms_[i] = norm(elems_[i]);
    isq_[i] = 1.0 / std::sqrt(static_cast<double>(norms_[i]));
    where.emplace(elems_[i], static_cast<std::int32_t>(i));
  }
  const SpfTable& spf = spf_table(static_cast<std::uint32_t>(std::max<i64>(bound, 16)));
  std::unordered_map<u64, SplitResult> splits;
  std::unordered_map<EisInt, std::int32_t, EisHash> prime_id;
  for (std::size_t i = 0; i < n; ++i) {
    const EisInt x = elems_[i];
    if (norms_[i] == 1) continue;
    u64 p = spf.spf(static_cast<std::uint32_t>(norms_[i]));
    EisInt pi;
    if (p % 3 == 2) {
      pi = EisInt{-static_cast<i64>(p), 0};
    } else {
      auto it = splits.find(p);
      if (it == splits.end()) it = splits.emplace(p, split_rational_prime(p)).first;
      pi = divides(it->second.pi, x) ? it->second.pi : it->second.pi_bar;
    }
    auto pid = prime_id.find(pi);
    if (pid == prime_id.end()) {
      pid = prime_id.emplace(pi, static_cast<std::int32_t>(primes_.size())).first;
      primes_.push_back(pi);
    }
    prime_of_[i] = pid->second;
    cofactor_[i] = where.at(exact_div(x, pi));
  }
}

std::size_t IdealIndex::count_upto(i64 b) const {
  return static_cast<std::size_t>(std::upper_bound(norms_.begin(), norms_.end(), b) - norms_.begin());
}

void IdealIndex::chi_table(EisInt q, std::vector<std::uint8_t>& out, i64 upto) const {
  if (upto < 0 || upto > bound_) upto = bound_;
  const std::size_t m = count_upto(upto);
  std::vector<std::uint8_t> on_primes(primes_.size(), 255);
  out.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::int32_t p = prime_of_[i];
    if (p < 0) {
      out[i] = 0;
      continue;
    }
    if (on_primes[p] == 255) {
      CubicSymbolValue v = symbol(primes_[p], q);
      on_primes[p] = v.zero ? kChiZero : static_cast<std::uint8_t>(v.k);
    }
    std::uint8_t a = on_primes[p], b = out[cofactor_[i]];
    out[i] = (a == kChiZero || b == kChiZero) ? kChiZero : static_cast<std::uint8_t>((a + b) % 3);
  }
}

EisFactorization IdealIndex::factorization(std::size_t i) const {
  EisFactorization f;
  std::int32_t cur = static_cast<std::int32_t>(i);
  while (prime_of_[cur] >= 0) {
    const EisInt pi = primes_[prime_of_[cur]];
    if (!f.primes.empty() && f.primes.back().pi == pi)
      ++f.primes.back().e;
    else
      f.primes.push_back({pi, 1});
    cur = cofactor_[cur];
  }
  std::sort(f.primes.begin(), f.primes.end(), [](const PrimePower& x, const PrimePower& y) {
    const i64 nx = norm(x.pi), ny = norm(y.pi);
    return nx != ny ? nx < ny : x.pi < y.pi;
  });
  return f;
}

const IdealIndex& ideal_index(i64 bound) {
  std::lock_guard<std::mutex> lock(g_index_mu);
  for (auto& ix : g_indexes)
    if (ix->bound() >= bound) return *ix;
  i64 want = std::max<i64>(bound, 4096);
  if (!g_indexes.empty()) want = std::max(want, 2 * g_indexes.back()->bound());
  g_indexes.push_back(std::make_unique<IdealIndex>(want));
  return *g_indexes.back();
}

bool in_f3prime(EisInt q) {
  if (!is_primary(q) || q == EisInt{1, 0}) return false;
  if (!(reduce_mod9(q) == ResidueClassMod9{1, 0})) return false;
  return is_squarefree(q);
}

void require_f3prime(EisInt q) {
  if (!in_f3prime(q)) throw Error(ErrorKind::NotInFamily, q.str() + " is not squarefree, primary and 1 mod 9");
}

double a1_tail_bound(i64 norm_q, double T) {
  // Ideals of norm <= x number about (pi / (3 sqrt 3)) x = 0.605 x; 0.7 covers
  // the lower-order term at these sizes. Tail <= 0.7 sqrt(X0) int_T^inf u^{-1/2} Phi1(u) du.
  const double x0 = std::sqrt(3.0 * static_cast<double>(norm_q));
  const int n = 4000;
  const double h = 40.0 / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    double u = T + i * h;
    double f = std::erfc(std::sqrt(2.0 * std::numbers::pi * u)) / std::sqrt(u);
    s += f * ((i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  s *= h / 3.0;
  return 2.0 * 0.7 * std::sqrt(x0) * s;
}

A1Result a1(EisInt q, const AfeOptions& opt, bool conjugate_character) {
  if (!is_primary(q)) throw Error(ErrorKind::BadModulus, q.str());
  const i64 nq = norm(q);
  const double x0 = std::sqrt(3.0 * static_cast<double>(nq));
  const i64 B = static_cast<i64>(std::floor(opt.T * x0));
  const IdealIndex& ix = ideal_index(std::max<i64>(B, 1));
  std::vector<std::uint8_t> chi;
  ix.chi_table(q, chi, B);
  SuppExponents ex = supplementary_exponents(q);
  const int lam = ((-ex.alpha3) % 3 + 3) % 3;  // chi_q(lambda) = omega^lam
  RootAccumulator acc;
  i64 terms = 0;
  const auto& norms = ix.norms();
  const auto& isq = ix.inv_sqrt_norms();
  double scale = 1.0;
  for (int g = 0; scale <= static_cast<double>(B); ++g, scale *= 3.0) {
    const double w = std::pow(3.0, -0.5 * g);
    const std::size_t m = ix.count_upto(static_cast<i64>(std::floor(static_cast<double>(B) / scale)));
    const int shift = (lam * g) % 3;
    for (std::size_t i = 0; i < m; ++i) {
      if (chi[i] == kChiZero) continue;
      double v = w * isq[i] * phi_fast(1, scale * static_cast<double>(norms[i]) / x0);
      acc.add(static_cast<std::uint8_t>((chi[i] + shift) % 3), v);
      ++terms;
    }
  }
  A1Result r;
  r.value = acc.value(conjugate_character);
  r.terms = terms;
  r.tail_bound = a1_tail_bound(nq, opt.T) + 64.0 * 2.2e-16 * acc.abs_sum;
  return r;
}

double a2(EisInt q, const AfeOptions& opt, double* imag_out) {
  if (!is_primary(q)) throw Error(ErrorKind::BadModulus, q.str());
  const i64 nq = norm(q);
  if (nq > opt.a2_cap) throw Error(ErrorKind::CapExceeded, "a2 is limited to N(q) <= " + std::to_string(opt.a2_cap));
  const double denom = 3.0 * static_cast<double>(nq);
  const i64 B = static_cast<i64>(std::floor(opt.T2 * denom));
  const IdealIndex& ix = ideal_index(B);
  std::vector<std::uint8_t> chi;
  ix.chi_table(q, chi, B);
  SuppExponents ex = supplementary_exponents(q);
  const int lam = ((-ex.alpha3) % 3 + 3) % 3;
  // c(k) = sum over ideals of norm k of chi
  std::vector<cplx> c(static_cast<std::size_t>(B) + 1, 0.0);
  const auto& norms = ix.norms();
  i64 scale = 1;
  for (int g = 0; scale <= B; ++g, scale *= 3) {
    const std::size_t m = ix.count_upto(B / scale);
    const int shift = (lam * g) % 3;
    for (std::size_t i = 0; i < m; ++i)
      if (chi[i] != kChiZero) c[static_cast<std::size_t>(scale * norms[i])] += kW[(chi[i] + shift) % 3];
  }
  std::vector<std::pair<i64, cplx>> nz;
  for (i64 k = 1; k <= B; ++k)
    if (std::abs(c[k]) > 1e-12) nz.emplace_back(k, c[k] / std::sqrt(static_cast<double>(k)));
  KahanComplex acc;
  for (std::size_t i = 0; i < nz.size(); ++i) {
    const i64 k1 = nz[i].first;
    KahanComplex inner;
    for (std::size_t j = 0; j < nz.size() && k1 * nz[j].first <= B; ++j)
      inner.add(std::conj(nz[j].second) * phi_fast(2, static_cast<double>(k1 * nz[j].first) / denom));
    acc.add(nz[i].second * inner.value());
  }
  if (imag_out) *imag_out = acc.value().imag();
  return acc.value().real();
}

LValueRecord l_half(EisInt q, const AfeOptions& opt, bool with_a2) {
  require_f3prime(q);
  LValueRecord rec;
  rec.q = q;
  rec.conductor_norm = norm(q);
  A1Result r = a1(q, opt);
  cplx eps = g3_tilde({1, 0}, q);
  rec.a1 = r.value;
  rec.L_half = r.value + eps * std::conj(r.value);
  rec.terms_used = r.terms;
  rec.afe_tail_bound = 2.0 * r.tail_bound;
  if (with_a2) rec.a2 = a2(q, opt, &rec.a2_imag);
  return rec;
}

namespace {
// Smallest y on a coarse scan beyond which |V| stays below eps.
double v_cutoff(const VsTable& v, double eps) {
  double y = 1.0;
  double last_big = 1.0;
  for (int i = 0; i < 400 && y < 1e7; ++i, y *= 1.05)
    if (std::abs(v(y)) > eps) last_big = y;
  return last_big * 1.05;
}
}  // namespace

cplx l_strip(EisInt q1, EisInt q2, cplx s, double Y, int A) {
  if (s.real() < 0.0 || s.real() > 1.0) throw Error(ErrorKind::OutOfStrip, "l_strip needs 0 <= Re s <= 1");
  RootNumber rn = root_number(q1, q2, false);  // validates the family condition
  EisInt q = q1 * q2 * q2;
  const double nc = static_cast<double>(norm(q1 * q2));
  const double x0 = std::sqrt(3.0 * nc);
  VsTable vs(s, A), v1s(1.0 - s, A);
  const double eps = 1e-13;
  const i64 b_direct = static_cast<i64>(v_cutoff(vs, eps) * Y * x0);
  const i64 b_dual = static_cast<i64>(v_cutoff(v1s, eps) * x0 / Y);
  const i64 B = std::max<i64>(std::max(b_direct, b_dual), 1);
  const IdealIndex& ix = ideal_index(B);
  std::vector<std::uint8_t> chi;
  ix.chi_table(q, chi, B);
  const auto& norms = ix.norms();
  KahanComplex direct, dual;
  i64 scale = 1;
  for (int g = 0; scale <= B; ++g, scale *= 3) {
    const std::size_t m = ix.count_upto(B / scale);
    for (std::size_t i = 0; i < m; ++i) {
      if (chi[i] == kChiZero) continue;
      const double N = static_cast<double>(scale * norms[i]);
      const cplx c = kW[chi[i]];
      if (scale * norms[i] <= b_direct) direct.add(c * std::pow(N, -s) * vs(N / (Y * x0)));
      if (scale * norms[i] <= b_dual) dual.add(std::conj(c) * std::pow(N, s - 1.0) * v1s(Y * N / x0));
    }
  }
  cplx factor = std::pow(3.0 * nc, 0.5 - s) * std::pow(2.0 * std::numbers::pi, 2.0 * s - 1.0) *
                std::exp(lgamma_complex(1.0 - s) - lgamma_complex(s)) * rn.product;
  return direct.value() + factor * dual.value();
}

}  // namespace cml
