#include "cml/euler_products.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cml/errors.hpp"
#include "cml/parallel.hpp"
#include "cml/special.hpp"

namespace cml {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt3 = std::numbers::sqrt3;

std::vector<bool> prime_sieve(u64 n) {
  std::vector<bool> is(n + 1, true);
  is[0] = false;
  if (n >= 1) is[1] = false;
  for (u64 i = 2; i * i <= n; ++i)
    if (is[i])
      for (u64 j = i * i; j <= n; j += i) is[j] = false;
  return is;
}

double factor_C(double q) { return 1.0 + q / ((q + 1.0) * (std::pow(q, 1.5) - 1.0)); }

double factor_D(double q) {
  return 1.0 - 1.0 / (q * (q + 1.0)) + 2.0 * q / ((q + 1.0) * (std::pow(q, 1.5) - 1.0));
}

double factor_P(double q) {
  const double r = std::sqrt(q);
  const double q32 = q * r, q52 = q * q * r;
  const double num = (q - 1.0) * (q + 1.0) * (q * q * q * q + 2.0 * q * q * q + q * q - 2.0 * q32 + 1.0);
  const double den = q * (q52 + q32 - 1.0) * (q52 + q32 - 1.0);
  return num / den;
}

double factor_P_alt(double q) {
  const double G = mult_fn(MultFn::G, q), H = mult_fn(MultFn::H, q);
  return (1.0 - 1.0 / q) * (1.0 + G * G / (q * H));
}

struct ProductSpec {
  double (*factor)(double);
  double prefactor;
  int a;  // power of zeta_lambda(3/2) pulled out
  int b;  // power of zeta_lambda(2) pulled out
};

ProductSpec spec_for(ConstantName n) {
  const double zk2 = zeta_K(2.0);
  switch (n) {
    case ConstantName::C: return {factor_C, kPi / (36.0 * (kSqrt3 - 1.0) * zk2), 1, 0};
    case ConstantName::D: return {factor_D, kPi * kPi / (648.0 * (2.0 - kSqrt3) * zk2), 2, -1};
    case ConstantName::scriptP: return {factor_P, 1.0, 0, -1};
    case ConstantName::scriptP_alt: return {factor_P_alt, 1.0, 0, -1};
    default: throw Error(ErrorKind::Config, "not an Euler product");
  }
}

// Local factor left after removing zeta_lambda(3/2)^a zeta_lambda(2)^b.
double log_residual(const ProductSpec& sp, double q) {
  double v = std::log(sp.factor(q));
  if (sp.a) v += sp.a * std::log1p(-std::pow(q, -1.5));
  if (sp.b) v += sp.b * std::log1p(-1.0 / (q * q));
  return v;
}

// Sum of log_residual over prime ideals of norm > B. The residual decays like
// q^{-5/2}; its size at q = B sets the scale and the prime ideal theorem gives
// the density (dx / log x for degree-one ideals, dp / (2 log p) for inert p^2).
// Evaluating the factor itself far beyond B would only add rounding noise.
double residual_tail(const ProductSpec& sp, double B) {
  const double L = log_residual(sp, B);
  auto simpson = [](auto f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  const double lb = std::log(B);
  // x = B e^u: L e^{-5u/2} B e^u / (log B + u)
  const double split = simpson([&](double u) { return std::exp(-1.5 * u) / (lb + u); }, 0.0, 40.0, 4000);
  // p = sqrt(B) e^u, norm p^2: L e^{-5u} sqrt(B) e^u / (2 (log sqrt(B) + u))
  const double inert = simpson([&](double u) { return std::exp(-4.0 * u) / (2.0 * (0.5 * lb + u)); }, 0.0, 20.0, 4000);
  return L * (B * split + std::sqrt(B) * inert);
}

}  // namespace

double zeta_K(double s) {
  if (!(s > 1.0)) throw Error(ErrorKind::DivergentArgument, "zeta_K needs s > 1");
  return riemann_zeta(s) * dirichlet_l_minus3(s);
}

double zeta_lambda(double s) { return (1.0 - std::pow(3.0, -s)) * zeta_K(s); }

double zeta_lambda_residue() { return 2.0 * kPi / (9.0 * kSqrt3); }

double zeta_lambda_residue_extrapolated() {
  // f(s) = (s-1) zeta_lambda(s) = R + a (s-1) + b (s-1)^2 + ...
  const double h[3] = {0.1, 0.01, 0.001};
  double f[3];
  for (int i = 0; i < 3; ++i) f[i] = h[i] * zeta_lambda(1.0 + h[i]);
  // quadratic through the three points, evaluated at h = 0
  double v = 0.0;
  for (int i = 0; i < 3; ++i) {
    double l = 1.0;
    for (int j = 0; j < 3; ++j)
      if (j != i) l *= (0.0 - h[j]) / (h[i] - h[j]);
    v += f[i] * l;
  }
  return v;
}

MultFn parse_mult_fn(const std::string& s) {
  if (s == "r") return MultFn::r;
  if (s == "g") return MultFn::g;
  if (s == "h") return MultFn::h;
  if (s == "G") return MultFn::G;
  if (s == "H") return MultFn::H;
  if (s == "eta") return MultFn::eta;
  throw Error(ErrorKind::Config, "unknown multiplicative function " + s);
}

double mult_fn(MultFn f, double q) {
  if (q == 3.0) throw Error(ErrorKind::RamifiedPrime, "prime above 3");
  if (q < 2.0) throw Error(ErrorKind::Config, "norm of a prime ideal must be >= 2");
  const double r = std::sqrt(q);
  const double q32 = q * r, q52 = q * q * r, q72 = q * q * q * r;
  const double den = q72 + q52 + q * q - q32 - q + 1.0;
  switch (f) {
    case MultFn::r: return q52 / (q52 + q32 - 1.0);
    case MultFn::g: return 1.0 - (q32 - 1.0) * (q - 1.0) / den;
    case MultFn::h: return 1.0 + (q * q - q32 + 1.0) * (q - 1.0) / den;
    case MultFn::G: return mult_fn(MultFn::r, q) / r - mult_fn(MultFn::h, q);
    case MultFn::H: {
      const double h = mult_fn(MultFn::h, q);
      return mult_fn(MultFn::g, q) - h * h / q;
    }
    case MultFn::eta: {
      const double h = mult_fn(MultFn::h, q);
      return h * h * std::log(q) / (q * mult_fn(MultFn::H, q));
    }
  }
  return 0.0;
}

std::vector<u64> prime_ideal_norms(u64 bound) {
  auto is = prime_sieve(bound);
  std::vector<u64> out;
  for (u64 p = 2; p <= bound; ++p) {
    if (!is[p] || p == 3) continue;
    if (p % 3 == 1) {
      out.push_back(p);
      out.push_back(p);
    } else if (p * p <= bound) {
      out.push_back(p * p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_ideals_upto(u64 bound) {
  // number of ideals of norm n is sum_{d | n} chi_{-3}(d)
  long long total = 0;
  for (u64 d = 1; d <= bound; ++d) {
    int chi = d % 3 == 1 ? 1 : (d % 3 == 2 ? -1 : 0);
    total += chi * static_cast<long long>(bound / d);
  }
  return static_cast<std::size_t>(total);
}

double landau_ideal_count(double x) { return kPi / (3.0 * kSqrt3) * x; }

ConstantName parse_constant(const std::string& s) {
  if (s == "C") return ConstantName::C;
  if (s == "D") return ConstantName::D;
  if (s == "c0") return ConstantName::c0;
  if (s == "P" || s == "scriptP") return ConstantName::scriptP;
  if (s == "P_alt") return ConstantName::scriptP_alt;
  if (s == "C1") return ConstantName::C1;
  throw Error(ErrorKind::Config, "unknown constant " + s);
}

std::string constant_label(ConstantName c) {
  switch (c) {
    case ConstantName::C: return "C";
    case ConstantName::D: return "D";
    case ConstantName::c0: return "c0";
    case ConstantName::scriptP: return "P";
    case ConstantName::scriptP_alt: return "P_alt";
    case ConstantName::C1: return "C1";
  }
  return "?";
}

double c0() {
  return std::pow(2.0 * kPi, 5.0 / 3.0) / (8.0 * std::pow(3.0, 4.5) * std::tgamma(2.0 / 3.0) * zeta_K(2.0));
}

EulerProductResult constant(ConstantName name, u64 prime_bound, int workers) {
  EulerProductResult res;
  res.name = constant_label(name);
  res.prime_norm_bound = prime_bound;
  if (name == ConstantName::c0 || name == ConstantName::C1) {
    res.value = res.raw = name == ConstantName::c0 ? c0() : kPi * kSqrt3 / (54.0 * zeta_K(2.0));
    return res;
  }
  if (prime_bound < 1000) throw Error(ErrorKind::Config, "prime_bound must be >= 1000");
  const ProductSpec sp = spec_for(name);
  const std::vector<u64> norms = prime_ideal_norms(prime_bound);
  const std::size_t half = static_cast<std::size_t>(
      std::upper_bound(norms.begin(), norms.end(), prime_bound / 2) - norms.begin());
  auto sum_range = [&](std::size_t n, auto term) { return sharded_sum(n, workers, term).real(); };
  const double raw_log = sum_range(norms.size(), [&](std::size_t i) { return std::log(sp.factor(double(norms[i]))); });
  const double res_log = sum_range(norms.size(), [&](std::size_t i) { return log_residual(sp, double(norms[i])); });
  const double res_log_half = sum_range(half, [&](std::size_t i) { return log_residual(sp, double(norms[i])); });
  double K = 0.0;
  for (u64 q : norms) K = std::max(K, std::fabs(sp.factor(double(q)) - 1.0) * std::pow(double(q), 1.5));

  double zeta_part = 0.0;
  if (sp.a) zeta_part += sp.a * std::log(zeta_lambda(1.5));
  if (sp.b) zeta_part += sp.b * std::log(zeta_lambda(2.0));
  const double tail = residual_tail(sp, double(prime_bound));
  const double tail_half = residual_tail(sp, double(prime_bound / 2));
  res.raw = sp.prefactor * std::exp(raw_log);
  res.value = sp.prefactor * std::exp(zeta_part + res_log + tail);
  const double value_half = sp.prefactor * std::exp(zeta_part + res_log_half + tail_half);
  res.tail_estimate = std::fabs(res.value * tail);
  res.successive_diff = std::fabs(res.value - value_half);
  res.fitted_K = K;
  return res;
}

double remarkable_factor(double q) {
  const double c = factor_C(q);
  return factor_P(q) * c * c / factor_D(q);
}

double remarkable_identity(u64 prime_bound) {
  if (prime_bound < 1000) throw Error(ErrorKind::Config, "prime_bound must be >= 1000");
  KahanSum s;
  for (u64 q : prime_ideal_norms(prime_bound)) s.add(std::log(remarkable_factor(double(q))));
  return std::exp(s.value());
}

}  // namespace cml
