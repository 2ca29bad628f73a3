#include "cml/family.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "cml/errors.hpp"
#include "cml/factorization.hpp"
#include "cml/parallel.hpp"

namespace cml {

namespace {

bool by_norm(const EisInt& x, const EisInt& y) {
  const i64 nx = norm(x), ny = norm(y);
  if (nx != ny) return nx < ny;
  return x < y;
}

// All q = 1 (mod 9) with lo < N(q) <= hi, q != 1.
std::vector<EisInt> class_one_mod9(i64 hi, i64 lo) {
  std::vector<EisInt> out;
  // N(a + b w) >= 3 max(a, b)^2 / 4
  const i64 box = static_cast<i64>(std::sqrt(4.0 * static_cast<double>(hi) / 3.0)) + 2;
  const i64 jmax = box / 9 + 1;
  for (i64 j = -jmax; j <= jmax; ++j) {
    const i64 b = 9 * j;
    for (i64 a = 1 - 9 * ((box + 1) / 9 + 1); a <= box; a += 9) {
      EisInt q{a, b};
      const i64 n = norm(q);
      if (n > lo && n <= hi && !(a == 1 && b == 0)) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end(), by_norm);
  return out;
}

double weight(TestKind F, double t) { return test_function(F, t); }

double fcheck0(TestKind F) { return f_check(F, {0.0, 0.0}).real(); }

const EulerProductResult& cached_constant(ConstantName n) {
  static const EulerProductResult C = constant(ConstantName::C, 1000000);
  static const EulerProductResult D = constant(ConstantName::D, 1000000);
  return n == ConstantName::C ? C : D;
}

// Primes dividing q at least twice.
std::vector<EisInt> square_primes(EisInt q) {
  std::vector<EisInt> out;
  for (const auto& pp : factor(q).primes)
    if (pp.e >= 2) out.push_back(pp.pi);
  return out;
}

std::pair<int, int> my_ry(EisInt q, double Y) {
  auto ps = square_primes(q);
  int m = 0, r = 0;
  const std::size_t k = ps.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    double n = 1.0;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        n *= static_cast<double>(norm(ps[i]));
        sign = -sign;
      }
    (n <= Y ? m : r) += sign;
  }
  return {m, r};
}

}  // namespace

std::vector<EisInt> enumerate_f3prime(i64 hi, i64 lo) {
  std::vector<EisInt> out;
  for (const EisInt& q : class_one_mod9(hi, lo))
    if (is_squarefree(q)) out.push_back(q);
  return out;
}

std::vector<F3Element> enumerate_f3(i64 hi) {
  std::vector<F3Element> out;
  std::vector<EisInt> sf;
  for (const EisInt& x : enumerate_primary(hi))
    if (is_squarefree(x)) sf.push_back(x);
  for (const EisInt& q1 : sf)
    for (const EisInt& q2 : sf) {
      if (norm(q1) * norm(q2) > hi) break;
      if (!coprime(q1, q2)) continue;
      const EisInt q = q1 * q2 * q2;
      if (q == EisInt{1, 0}) continue;
      if (reduce_mod9(q) == ResidueClassMod9{1, 0}) out.push_back({q1, q2});
    }
  return out;
}

double f3prime_window_prediction(double X) {
  return X * std::numbers::pi * std::numbers::sqrt3 / (108.0 * zeta_K(2.0));
}

int m_y(EisInt q, double Y) { return my_ry(q, Y).first; }
int r_y(EisInt q, double Y) { return my_ry(q, Y).second; }

SmDecomposition sm_decomposition(double X, double Y, TestKind kind, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  SmDecomposition d;
  KahanSum s, sm, sr, sa;
  for (const EisInt& q : class_one_mod9(static_cast<i64>(2 * X), static_cast<i64>(X))) {
    const double beta = U(rng);
    const double w = weight(kind, static_cast<double>(norm(q)) / X);
    auto [m, r] = my_ry(q, Y);
    const int mu2 = is_squarefree(q) ? 1 : 0;
    s.add(mu2 * beta * w);
    sm.add(m * beta * w);
    sr.add(r * beta * w);
    sa.add(std::fabs(r * beta) * w);
  }
  d.S = s.value();
  d.S_M = sm.value();
  d.S_R_signed = sr.value();
  d.S_R_abs = sa.value();
  return d;
}

// ---- L cache ---------------------------------------------------------------

LCache::LCache(std::string dir, double T) : dir_(std::move(dir)), T_(T) {}

std::string LCache::path() const { return (std::filesystem::path(dir_) / "lvalues.csv").string(); }

void LCache::load() {
  map_.clear();
  pending_.clear();
  if (dir_.empty()) return;
  std::ifstream in(path());
  if (!in) return;
  std::string line;
  bool saw_key = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      double t;
      if (std::sscanf(line.c_str(), "# T=%lf", &t) == 1) {
        saw_key = true;
        if (t != T_)
          throw Error(ErrorKind::CacheMismatch, path() + " was written with T=" + std::to_string(t) +
                                                    ", requested T=" + std::to_string(T_));
      }
      continue;
    }
    if (line.rfind("a,", 0) == 0) continue;
    long long a, b, n, terms;
    double re, im, tail;
    if (std::sscanf(line.c_str(), "%lld,%lld,%lld,%lf,%lf,%lld,%lf", &a, &b, &n, &re, &im, &terms, &tail) != 7)
      throw Error(ErrorKind::CacheMismatch, "malformed cache row: " + line);
    EisInt q{a, b};
    if (norm(q) != n) throw Error(ErrorKind::CacheMismatch, "norm mismatch in cache row: " + line);
    map_[q] = Entry{{re, im}, terms, tail};
  }
  if (!saw_key && !map_.empty()) throw Error(ErrorKind::CacheMismatch, path() + " has no truncation key");
}

const LCache::Entry* LCache::find(EisInt q) const {
  auto it = map_.find(q);
  return it == map_.end() ? nullptr : &it->second;
}

void LCache::put(EisInt q, const Entry& e) {
  map_[q] = e;
  pending_.emplace_back(q, e);
}

void LCache::flush() {
  if (dir_.empty() || pending_.empty()) return;
  std::filesystem::create_directories(dir_);
  const bool fresh = !std::filesystem::exists(path());
  std::ofstream out(path(), std::ios::app);
  if (fresh) {
    out << "# cml L(1/2) cache\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "# T=%.17g\n", T_);
    out << buf;
    out << "a,b,conductor_norm,re_L,im_L,terms_used,tail_bound\n";
  }
  char buf[256];
  for (const auto& [q, e] : pending_) {
    std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%.17g,%.17g,%lld,%.17g\n", static_cast<long long>(q.a),
                  static_cast<long long>(q.b), static_cast<long long>(norm(q)), e.L.real(), e.L.imag(),
                  static_cast<long long>(e.terms), e.tail);
    out << buf;
  }
  pending_.clear();
}

LBatch l_values(const std::vector<EisInt>& qs, const AfeOptions& opt, LCache* cache, int workers) {
  LBatch out;
  out.qs = qs;
  out.values.resize(qs.size());
  std::vector<std::size_t> todo;
  i64 max_norm = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const LCache::Entry* e = cache ? cache->find(qs[i]) : nullptr;
    if (e) {
      out.values[i] = *e;
    } else {
      todo.push_back(i);
      max_norm = std::max(max_norm, norm(qs[i]));
    }
  }
  if (!todo.empty()) {
    ideal_index(static_cast<i64>(opt.T * std::sqrt(3.0 * static_cast<double>(max_norm))) + 1);
    parallel_for(todo.size(), workers, [&](std::size_t k) {
      const std::size_t i = todo[k];
      LValueRecord r = l_half(qs[i], opt);
      out.values[i] = LCache::Entry{r.L_half, r.terms_used, r.afe_tail_bound};
    });
    if (cache) {
      for (std::size_t i : todo) cache->put(qs[i], out.values[i]);
      cache->flush();
    }
  }
  return out;
}

// ---- moments ---------------------------------------------------------------

const char* moment_kind_name(MomentKind k) {
  switch (k) {
    case MomentKind::First: return "first";
    case MomentKind::Second: return "second";
    case MomentKind::Nonvanishing: return "nonvanishing";
    case MomentKind::MollifiedFirst: return "mollified_first";
    case MomentKind::MollifiedSecond: return "mollified_second";
  }
  return "?";
}

MomentKind parse_moment_kind(const std::string& s) {
  if (s == "first") return MomentKind::First;
  if (s == "second") return MomentKind::Second;
  if (s == "nonvanishing") return MomentKind::Nonvanishing;
  throw Error(ErrorKind::Config, "unknown moment kind " + s);
}

MomentReport moment(MomentKind kind, double X, TestKind F, const MomentOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  MomentReport rep;
  rep.X = X;
  rep.F = F;
  rep.kind = kind;
  const auto qs = enumerate_f3prime(static_cast<i64>(2 * X), static_cast<i64>(X));
  LBatch batch = l_values(qs, opt.afe, opt.cache, opt.workers);
  KahanComplex acc;
  KahanSum wsum, hit;
  i64 sharp = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double w = weight(F, static_cast<double>(norm(qs[i])) / X);
    const auto& e = batch.values[i];
    rep.max_tail = std::max(rep.max_tail, e.tail);
    wsum.add(w);
    switch (kind) {
      case MomentKind::First: acc.add(w * e.L); break;
      case MomentKind::Second: acc.add(w * std::norm(e.L)); break;
      default: {
        // below tail + 1e-8 the value is undetermined and counts as vanishing
        const bool nz = std::abs(e.L) > e.tail + 1e-8;
        if (nz) {
          hit.add(w);
          ++sharp;
        }
      }
    }
  }
  rep.count = static_cast<i64>(qs.size());
  rep.weight = wsum.value();
  const double fc = fcheck0(F);
  switch (kind) {
    case MomentKind::First:
      rep.raw = acc.value();
      rep.prediction = cached_constant(ConstantName::C).value * fc * X;
      rep.ratio = rep.raw.real() / rep.prediction;
      break;
    case MomentKind::Second:
      rep.raw = acc.value();
      rep.prediction = 2.0 * cached_constant(ConstantName::D).value * fc * X * std::log(X);
      rep.ratio = rep.raw.real() / rep.prediction;
      break;
    default:
      if (kind != MomentKind::Nonvanishing) throw Error(ErrorKind::Config, "use mollified_moment");
      rep.raw = rep.weight > 0 ? hit.value() / rep.weight : 0.0;
      rep.sharp_fraction = qs.empty() ? 0.0 : static_cast<double>(sharp) / static_cast<double>(qs.size());
      rep.prediction = 1.0 / 7.0;
      rep.ratio = rep.raw.real() / rep.prediction;
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

AffineFit fit_second_moment(const std::vector<double>& xs, TestKind F, const MomentOptions& opt) {
  if (xs.size() < 2) throw Error(ErrorKind::Config, "second-moment fit needs at least two X values");
  AffineFit fit;
  std::vector<double> u, v;
  for (double X : xs) {
    fit.points.push_back(moment(MomentKind::Second, X, F, opt));
    u.push_back(std::log(X));
    v.push_back(fit.points.back().raw.real() / X);
  }
  const double n = static_cast<double>(u.size());
  double su = 0, sv = 0, suu = 0, suv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
    suu += u[i] * u[i];
    suv += u[i] * v[i];
  }
  fit.slope = (n * suv - su * sv) / (n * suu - su * su);
  const double c = (sv - fit.slope * su) / n;
  fit.intercept = c / fit.slope;
  fit.predicted_slope = 2.0 * cached_constant(ConstantName::D).value * fcheck0(F);
  fit.slope_ratio = fit.slope / fit.predicted_slope;
  for (auto& p : fit.points) {
    p.slope = fit.slope;
    p.intercept = fit.intercept;
  }
  return fit;
}

// ---- mollifier ---------------------------------------------------------------

namespace {

double mult_on(MultFn f, const EisFactorization& fc) {
  double v = 1.0;
  for (const auto& pp : fc.primes) v *= mult_fn(f, static_cast<double>(norm(pp.pi)));
  return v;
}

MollifierSpec build(double M, double theta) {
  MollifierSpec m;
  m.theta = theta;
  m.M = M;
  m.C = cached_constant(ConstantName::C).value;
  m.D = cached_constant(ConstantName::D).value;
  const EisInt one{1, 0};
  if (M < 4.0) {
    // no prime ideal coprime to 3 has norm below 4
    const double xi1 = M > 1.0 ? m.C / (m.D * std::log(M)) : 1.0;
    m.support = {one};
    m.xi[one] = xi1;
    m.lambda[one] = xi1;
    return m;
  }
  const double scale = m.C / (m.D * std::log(M));
  for (const EisInt& d : enumerate_primary(static_cast<i64>(std::floor(M)))) {
    if (!is_squarefree(d)) continue;
    m.support.push_back(d);
    const EisFactorization fd = factor(d);
    m.xi[d] = scale * mult_on(MultFn::G, fd) / (static_cast<double>(norm(d)) * mult_on(MultFn::H, fd));
  }
  for (const EisInt& d : m.support) m.lambda[d] = 0.0;
  // lambda(l) = sum_a mu(a) h(a) xi(l a)
  for (const EisInt& d : m.support) {
    const EisFactorization fd = factor(d);
    const std::size_t k = fd.primes.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      EisInt a = one;
      double mh = 1.0;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) {
          a = a * fd.primes[i].pi;
          mh *= -mult_fn(MultFn::h, static_cast<double>(norm(fd.primes[i].pi)));
        }
      const EisInt l = primary_associate(exact_div(d, a)).primary;
      m.lambda[l] += mh * m.xi[d];
    }
  }
  return m;
}

}  // namespace

MollifierSpec build_mollifier(double theta, double X) {
  if (!(theta > 0.0 && theta <= 1.0 / 6.0)) throw Error(ErrorKind::ThetaOutOfRange, "theta must lie in (0, 1/6]");
  return build(std::pow(X, theta), theta);
}

MollifierSpec build_mollifier_length(double M) { return build(M, 0.0); }

double q1_via_lambda(const MollifierSpec& m) {
  KahanSum s;
  for (const EisInt& b : m.support) {
    const auto fb = factor(b);
    s.add(m.lambda.at(b) * mult_on(MultFn::r, fb) / std::sqrt(static_cast<double>(norm(b))));
  }
  return s.value();
}

double q1_via_xi(const MollifierSpec& m) {
  KahanSum s;
  for (const EisInt& d : m.support) s.add(m.xi.at(d) * mult_on(MultFn::G, factor(d)));
  return s.value();
}

cplx mollifier_value(const MollifierSpec& m, EisInt q) {
  KahanComplex s;
  for (const EisInt& b : m.support) {
    const double c = m.lambda.at(b) * std::sqrt(static_cast<double>(norm(b)));
    if (c == 0.0) continue;
    s.add(c * symbol(b, q).to_complex());
  }
  return s.value();
}

double mollifier_triangle_bound(const MollifierSpec& m) {
  double s = 0.0;
  for (const EisInt& b : m.support) s += std::fabs(m.lambda.at(b)) * std::sqrt(static_cast<double>(norm(b)));
  return s;
}

MollifiedReport mollified_moment(double X, const MollifierSpec& m, TestKind F, const MomentOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto qs = enumerate_f3prime(static_cast<i64>(2 * X), static_cast<i64>(X));
  LBatch batch = l_values(qs, opt.afe, opt.cache, opt.workers);
  std::vector<cplx> mv(qs.size());
  parallel_for(qs.size(), opt.workers, [&](std::size_t i) { mv[i] = mollifier_value(m, qs[i]); });
  KahanComplex s1;
  KahanSum s2, s0;
  double max_tail = 0.0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double w = weight(F, static_cast<double>(norm(qs[i])) / X);
    const cplx lm = batch.values[i].L * mv[i];
    s1.add(w * lm);
    s2.add(w * std::norm(lm));
    s0.add(w);
    max_tail = std::max(max_tail, batch.values[i].tail);
  }
  MollifiedReport rep;
  rep.q1_lambda = q1_via_lambda(m);
  rep.q1_xi = q1_via_xi(m);
  const double fc = fcheck0(F);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (MomentReport* r : {&rep.first, &rep.second}) {
    r->X = X;
    r->F = F;
    r->count = static_cast<i64>(qs.size());
    r->weight = s0.value();
    r->max_tail = max_tail;
    r->wall_seconds = secs;
  }
  rep.first.kind = MomentKind::MollifiedFirst;
  rep.first.raw = s1.value();
  rep.first.prediction = m.C * fc * X * rep.q1_lambda;
  rep.first.ratio = rep.first.raw.real() / rep.first.prediction;
  rep.second.kind = MomentKind::MollifiedSecond;
  rep.second.raw = s2.value();
  rep.second.prediction = std::numeric_limits<double>::quiet_NaN();
  rep.second.ratio = std::numeric_limits<double>::quiet_NaN();
  rep.cs_ratio = s2.value() > 0 ? std::norm(s1.value()) / (s0.value() * s2.value()) : 0.0;
  rep.theta_ratio = m.theta / (m.theta + 1.0);
  return rep;
}

}  // namespace cml
