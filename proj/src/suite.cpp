#include "cml/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>

#include "cml/bias_lab.hpp"
#include "cml/csvio.hpp"
#include "cml/cubic_symbol.hpp"
#include "cml/errors.hpp"
#include "cml/euler_products.hpp"
#include "cml/family.hpp"
#include "cml/gauss_sums.hpp"
#include "cml/lfun.hpp"
#include "cml/weights.hpp"

namespace cml {

namespace {

struct Check {
  bool pass;
  std::string detail;
};

std::string f(double v, int d = 3) { return fmt(v, d); }

// One in-memory L cache per cache directory, shared by the moment criteria.
LCache& shared_cache(const std::string& dir) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<LCache>> caches;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = caches[dir];
  if (!slot) {
    slot = std::make_unique<LCache>(dir, AfeOptions{}.T);
    slot->load();
  }
  return *slot;
}

MomentOptions moment_options(const SuiteOptions& opt) {
  MomentOptions mo;
  mo.workers = opt.workers;
  mo.cache = &shared_cache(opt.cache_dir);
  return mo;
}

Check gauss_magnitude() {
  double worst = 0;
  std::size_t n = 0;
  for (const EisInt& c : enumerate_primary(2000)) {
    const double N = static_cast<double>(norm(c));
    const double target = is_squarefree(c) ? N : 0.0;
    worst = std::max({worst, std::fabs(std::norm(g3_direct({1, 0}, c)) - target) / N,
                      std::fabs(std::norm(g3_fast({1, 0}, c)) - target) / N});
    ++n;
  }
  return {worst <= 1e-9, std::to_string(n) + " moduli, max ||g|^2 - mu^2 N| / N = " + f(worst)};
}

Check cube_relation() {
  double worst = 0;
  std::size_t n = 0;
  for (u64 p = 7; p <= 5000; p += 6) {
    if (!is_prime_u64(p)) continue;
    const SplitResult s = split_rational_prime(p);
    for (EisInt pi : {s.pi, s.pi_bar}) {
      worst = std::max(worst, cube_relation_check(pi, true) / std::pow(static_cast<double>(p), 1.5));
      ++n;
    }
  }
  return {worst <= 1e-6, std::to_string(n) + " split primes, max relative defect " + f(worst)};
}

Check symbol_oracle() {
  std::mt19937_64 rng(20240611);
  const auto prim = enumerate_primary(100000);
  std::uniform_int_distribution<std::size_t> pick(0, prim.size() - 1);
  std::uniform_int_distribution<i64> coord(-1000000, 1000000);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const EisInt b = prim[pick(rng)];
    const EisInt a{coord(rng), coord(rng)};
    if (!(symbol(a, b) == symbol_by_factoring(a, b))) ++bad;
  }
  int bad_swap = 0, pairs = 0;
  while (pairs < 1000) {
    const EisInt a = prim[pick(rng)], b = prim[pick(rng)];
    if (norm(a) == 1 || norm(b) == 1 || !coprime(a, b)) continue;
    if (!(symbol(a, b) == symbol(b, a))) ++bad_swap;
    ++pairs;
  }
  return {bad == 0 && bad_swap == 0, "definition mismatches " + std::to_string(bad) + "/10000, reciprocity mismatches " +
                                         std::to_string(bad_swap) + "/1000"};
}

Check afe_cross() {
  const auto qs = enumerate_f3prime(10000);
  double worst = 0;
  for (const EisInt& q : qs) {
    const LValueRecord r = l_half(q, {}, true);
    const double l2 = std::norm(r.L_half);
    worst = std::max(worst, std::fabs(l2 - 2.0 * r.a2) / std::max({l2, 2.0 * std::fabs(r.a2), 1e-300}));
  }
  return {worst <= 1e-6, std::to_string(qs.size()) + " conductors, max relative diff " + f(worst)};
}

Check root_numbers() {
  const auto f3 = enumerate_f3(10000);
  const std::size_t step = std::max<std::size_t>(1, f3.size() / 200);
  double diff = 0, mag = 0;
  int n = 0;
  for (std::size_t i = 0; i < f3.size() && n < 200; i += step, ++n) {
    const RootNumber rn = root_number(f3[i].q1, f3[i].q2, true);
    diff = std::max(diff, std::abs(rn.direct - rn.product));
    mag = std::max(mag, std::fabs(std::abs(rn.direct) - 1.0));
  }
  return {n == 200 && diff <= 1e-8 && mag <= 1e-8,
          std::to_string(n) + " elements, max |W - product| " + f(diff) + ", max ||W|/sqrt N - 1| " + f(mag)};
}

Check phi_closed_form() {
  double worst = 0;
  for (int i = 0; i <= 200; ++i) {
    const double y = std::pow(10.0, -3.0 + 4.0 * i / 200.0);
    worst = std::max(worst, std::fabs(phi(1, y) - std::erfc(std::sqrt(2.0 * std::numbers::pi * y))));
  }
  return {worst <= 1e-8, "201 points on [1e-3, 10], max abs diff " + f(worst)};
}

Check euler_constants(int workers) {
  std::string detail;
  bool ok = true;
  for (ConstantName n : {ConstantName::C, ConstantName::D, ConstantName::scriptP}) {
    const double lo = constant(n, 100000, workers).value, hi = constant(n, 200000, workers).value;
    const double d = std::fabs(hi - lo);
    ok = ok && d <= 1e-6 && hi > 0;
    detail += constant_label(n) + " = " + fmt(hi, 10) + " (diff " + f(d, 2) + "), ";
  }
  const double p1 = remarkable_identity(1000000);
  ok = ok && std::fabs(p1 - 1.0) <= 1e-4;
  detail += "P1 = " + fmt(p1, 14);
  return {ok, detail};
}

Check family_density() {
  const double X = 1e6;
  const double n = static_cast<double>(enumerate_f3prime(static_cast<i64>(2 * X), static_cast<i64>(X)).size());
  const double pred = f3prime_window_prediction(X);
  const double r = n / pred;
  return {std::fabs(r - 1.0) <= 0.02, "count " + fmt(n, 10) + ", predicted " + fmt(pred, 8) + ", ratio " + fmt(r, 6)};
}

Check first_moment(const SuiteOptions& opt) {
  const MomentOptions mo = moment_options(opt);
  const double r1 = moment(MomentKind::First, 1e4, TestKind::Bump, mo).ratio;
  const double r2 = moment(MomentKind::First, 1e5, TestKind::Bump, mo).ratio;
  const double r3 = moment(MomentKind::First, 3e5, TestKind::Bump, mo).ratio;
  const bool ok = r2 >= 0.6 && r2 <= 1.4 && std::fabs(r3 - 1) < std::fabs(r1 - 1);
  return {ok, "ratio at 1e4 " + fmt(r1, 4) + ", 1e5 " + fmt(r2, 4) + ", 3e5 " + fmt(r3, 4)};
}

Check second_moment(const SuiteOptions& opt) {
  const AffineFit fit = fit_second_moment({1e4, 3e4, 1e5, 3e5}, TestKind::Bump, moment_options(opt));
  const bool ok = fit.slope_ratio >= 0.8 && fit.slope_ratio <= 1.2;
  return {ok, "slope " + fmt(fit.slope, 5) + " vs 2 D F(0) = " + fmt(fit.predicted_slope, 5) + ", ratio " +
                  fmt(fit.slope_ratio, 4) + ", b = " + fmt(fit.intercept, 4)};
}

Check nonvanishing(const SuiteOptions& opt) {
  const MomentReport r = moment(MomentKind::Nonvanishing, 1e5, TestKind::Bump, moment_options(opt));
  const double frac = r.raw.real();
  return {frac >= 1.0 / 7.0, "smoothed fraction " + fmt(frac, 6) + ", sharp window " + fmt(r.sharp_fraction, 6) +
                                 " over " + std::to_string(r.count) + " conductors"};
}

Check bias(const SuiteOptions& opt) {
  gauss_table().ensure(1000000, gauss_cache_path(opt.cache_dir), opt.workers);
  const BiasReport b = bias_scan({1, 0}, 1000000, opt.workers);
  const bool ok = b.exponent >= 0.75 && b.exponent <= 0.92 && b.final_ratio >= 0.75 && b.final_ratio <= 1.25;
  return {ok, "exponent " + fmt(b.exponent, 4) + " over " + std::to_string(b.T.size()) + " dyadic points, ratio at 1e6 " +
                  fmt(b.final_ratio, 4)};
}

Check poisson() {
  const std::vector<std::pair<EisInt, EisInt>> cases = {
      {{1, 0}, {1, 0}}, {{1, 0}, {4, 3}}, {{-2, -3}, {1, 0}}, {{1, 3}, {4, 3}}};
  double worst = 0, trunc = 0;
  for (const auto& [q, c] : cases) {
    const PoissonReport r = poisson_check(q, c, 400);
    worst = std::max(worst, r.residual);
    trunc = std::max(trunc, r.truncation_change);
  }
  return {worst <= 1e-6, "norms 1, 7, 13 at M = 400, max residual " + f(worst) + ", last doubling changed " + f(trunc)};
}

Check coprimality(int workers) {
  const auto res = coprimality_random_suite(20, 100000, 97, workers);
  double worst = 0, budget = 0;
  bool ok = res.size() == 20;
  for (const auto& r : res) {
    ok = ok && r.ok();
    worst = std::max(worst, r.residual);
    budget = r.budget;
  }
  return {ok, std::to_string(res.size()) + " choices at T = 1e5, max residual " + f(worst) + " (budget " + f(budget) + ")"};
}

Check mollifier(const SuiteOptions& opt) {
  const MollifierSpec spec = build_mollifier(0.1, 1e5);
  const MollifierSpec wide = build_mollifier_length(300);
  const double d1 = std::fabs(q1_via_lambda(spec) - q1_via_xi(spec));
  const double d2 = std::fabs(q1_via_lambda(wide) - q1_via_xi(wide));
  const MollifiedReport r = mollified_moment(1e5, spec, TestKind::Bump, moment_options(opt));
  const bool ok = d1 <= 1e-9 && d2 <= 1e-9 && r.cs_ratio > 0 && r.cs_ratio <= 1;
  return {ok, "Q1 two ways differ by " + f(d1, 2) + " (M = " + fmt(spec.M, 4) + ", support " +
                  std::to_string(spec.support.size()) + "), " + f(d2, 2) + " at M = 300 (support " +
                  std::to_string(wide.support.size()) + "); CS ratio " + fmt(r.cs_ratio, 4) + " vs theta/(theta+1) " +
                  fmt(r.theta_ratio, 4)};
}

}  // namespace

std::set<int> fast_criteria() { return {1, 2, 3, 4, 5, 6, 7, 8, 13, 14}; }

std::string criterion_name(int id) {
  static const char* names[] = {"",
                                "gauss-sum magnitude",
                                "cube relation",
                                "symbol oracle",
                                "AFE cross-check",
                                "root number",
                                "Phi1 closed form",
                                "Euler constants",
                                "family density",
                                "first moment",
                                "second moment slope",
                                "non-vanishing",
                                "gauss-sum bias",
                                "Poisson identity",
                                "coprimality removal",
                                "mollifier"};
  if (id < 1 || id > kCriteriaCount) throw Error(ErrorKind::Config, "no criterion " + std::to_string(id));
  return names[id];
}

std::string gauss_cache_path(const std::string& cache_dir) {
  if (cache_dir.empty()) return "";
  std::filesystem::create_directories(cache_dir);
  return (std::filesystem::path(cache_dir) / "gauss3.csv").string();
}

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  CriterionResult res;
  res.id = id;
  res.name = criterion_name(id);
  const auto t0 = std::chrono::steady_clock::now();
  Check c{false, ""};
  try {
    switch (id) {
      case 1: c = gauss_magnitude(); break;
      case 2: c = cube_relation(); break;
      case 3: c = symbol_oracle(); break;
      case 4: c = afe_cross(); break;
      case 5: c = root_numbers(); break;
      case 6: c = phi_closed_form(); break;
      case 7: c = euler_constants(opt.workers); break;
      case 8: c = family_density(); break;
      case 9: c = first_moment(opt); break;
      case 10: c = second_moment(opt); break;
      case 11: c = nonvanishing(opt); break;
      case 12: c = bias(opt); break;
      case 13: c = poisson(); break;
      case 14: c = coprimality(opt.workers); break;
      case 15: c = mollifier(opt); break;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CacheMismatch) throw;
    c = {false, std::string("error: ") + e.what()};
  }
  res.pass = c.pass;
  res.detail = c.detail;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteriaCount; ++id) {
    if (!opt.ids.empty() && !opt.ids.count(id)) continue;
    out.push_back(run_criterion(id, opt));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s %2d %-20s ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
  char tail[32];
  std::snprintf(tail, sizeof tail, "  [%.1fs]", r.seconds);
  return head + r.detail + tail;
}

}  // namespace cml
