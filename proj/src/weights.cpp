#include "cml/weights.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "cml/errors.hpp"
#include "cml/parallel.hpp"

namespace cml {

namespace {

constexpr double kPi = std::numbers::pi;

double smooth_edge(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// 0 for x <= 0, 1 for x >= 1, C-infinity in between
double smooth_step(double x) {
  double a = smooth_edge(x), b = smooth_edge(1.0 - x);
  return a / (a + b);
}

cplx phi_kernel(int j, cplx w) {
  // (2 pi)^{-j w} Gamma(1/2 + w)^j / Gamma(1/2)^j
  return std::exp(static_cast<double>(j) *
                  (-w * std::log(2.0 * kPi) + lgamma_complex(0.5 + w) - 0.5 * std::log(kPi)));
}

}  // namespace

TestKind parse_test_kind(const std::string& s) {
  if (s == "bump") return TestKind::Bump;
  if (s == "smoothstep") return TestKind::Smoothstep;
  throw Error(ErrorKind::Config, "unknown test function '" + s + "'");
}

const char* test_kind_name(TestKind k) { return k == TestKind::Bump ? "bump" : "smoothstep"; }

double test_function(TestKind kind, double t) {
  if (!(t > 1.0 && t < 2.0)) return 0.0;
  if (kind == TestKind::Bump) return std::exp(-1.0 / ((t - 1.0) * (2.0 - t)));
  return smooth_step((t - 1.0) / 0.1) * smooth_step((2.0 - t) / 0.1);
}

cplx f_check(TestKind kind, cplx w) {
  using boost::math::quadrature::gauss_kronrod;
  auto re = [&](double t) { return test_function(kind, t) * std::exp(w.real() * std::log(t)) * std::cos(w.imag() * std::log(t)); };
  auto im = [&](double t) { return test_function(kind, t) * std::exp(w.real() * std::log(t)) * std::sin(w.imag() * std::log(t)); };
  double r = gauss_kronrod<double, 61>::integrate(re, 1.0, 2.0, 20, 1e-13);
  double i = w.imag() == 0.0 ? 0.0 : gauss_kronrod<double, 61>::integrate(im, 1.0, 2.0, 20, 1e-13);
  return {r, i};
}

double f_check_simpson(TestKind kind, double w, int n) {
  if (n % 2) ++n;
  const double h = 1.0 / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    double t = 1.0 + i * h;
    double f = test_function(kind, t) * std::pow(t, w);
    s += f * ((i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return s * h / 3.0;
}

MellinKernel::MellinKernel(const std::function<cplx(cplx)>& K, Contour contour) : contour_(contour) {
  const long n = std::lround(contour.height / contour.h);
  t_.reserve(2 * n + 1);
  for (long k = -n; k <= n; ++k) {
    double t = k * contour.h;
    cplx w{contour.c, t};
    cplx kv = K(w);
    t_.push_back(t);
    k_.push_back(kv);
    kw_.push_back(kv / w);
  }
}

// dw = i dt, so (1/2 pi i) int ... dw = (1/2 pi) int ... dt
cplx MellinKernel::value(double y) const {
  const double L = std::log(y);
  const double scale = std::exp(-contour_.c * L) * contour_.h / (2.0 * kPi);
  KahanComplex acc;
  for (std::size_t k = 0; k < t_.size(); ++k) acc.add(kw_[k] * std::polar(1.0, -t_[k] * L));
  return acc.value() * scale;
}

cplx MellinKernel::log_derivative(double y) const {
  const double L = std::log(y);
  const double scale = std::exp(-contour_.c * L) * contour_.h / (2.0 * kPi);
  KahanComplex acc;
  for (std::size_t k = 0; k < t_.size(); ++k) acc.add(k_[k] * std::polar(1.0, -t_[k] * L));
  return -acc.value() * scale;
}

double phi_on(int j, double y, Contour contour) {
  MellinKernel k([j](cplx w) { return phi_kernel(j, w); }, contour);
  return k.value(y).real();
}

double phi(int j, double y) {
  if (j != 1 && j != 2) throw Error(ErrorKind::Config, "phi: j must be 1 or 2");
  if (!(y > 0.0)) throw Error(ErrorKind::Config, "phi: y must be positive");
  static std::mutex mu;
  static std::vector<std::pair<std::pair<int, int>, std::shared_ptr<MellinKernel>>> cache;
  const double c = y >= 1e-3 ? 2.0 : 0.5;
  auto kernel = [&](int level) {
    std::lock_guard<std::mutex> lock(mu);
    int key = j * 2 + (c == 2.0 ? 1 : 0);
    for (auto& [k, ptr] : cache)
      if (k.first == key && k.second == level) return ptr;
    Contour ct{c, (1.0 / 64) / (1 << level), 60.0 * (1 << level)};
    auto ptr = std::make_shared<MellinKernel>([j](cplx w) { return phi_kernel(j, w); }, ct);
    cache.push_back({{key, level}, ptr});
    return ptr;
  };
  double prev = kernel(0)->value(y).real();
  for (int level = 1; level <= 3; ++level) {
    double cur = kernel(level)->value(y).real();
    if (std::fabs(cur - prev) <= 1e-9) return cur;
    prev = cur;
  }
  throw Error(ErrorKind::QuadratureNotConverged, "phi(" + std::to_string(j) + ", " + std::to_string(y) + ")");
}

LogGridTable::LogGridTable(const MellinKernel& kernel, double ymin, double ymax, double step)
    : lmin_(std::log(ymin)), step_(step), ymin_(ymin), ymax_(ymax) {
  const std::size_t n = static_cast<std::size_t>(std::ceil((std::log(ymax) - lmin_) / step)) + 1;
  f_.resize(n);
  d_.resize(n);
  parallel_for(n, worker_count(), [&](std::size_t i) {
    double y = std::exp(lmin_ + step * static_cast<double>(i));
    f_[i] = kernel.value(y);
    d_[i] = kernel.log_derivative(y);
  });
  ymax_ = std::exp(lmin_ + step * static_cast<double>(n - 1));
  below_ = f_.front();
}

cplx LogGridTable::operator()(double y) const {
  double s = (std::log(y) - lmin_) / step_;
  if (s < 0.0) return below_;
  std::size_t i = static_cast<std::size_t>(s);
  if (i + 1 >= f_.size()) return f_.back();
  double u = s - static_cast<double>(i);
  double u2 = u * u, u3 = u2 * u;
  double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u, h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
  return h00 * f_[i] + h10 * step_ * d_[i] + h01 * f_[i + 1] + h11 * step_ * d_[i + 1];
}

double phi_fast(int j, double y) {
  static const LogGridTable tables[2] = {
      LogGridTable(MellinKernel([](cplx w) { return phi_kernel(1, w); }, {0.25, 1.0 / 32, 50.0}), 1e-12, 64.0,
                   1.0 / 128),
      LogGridTable(MellinKernel([](cplx w) { return phi_kernel(2, w); }, {0.25, 1.0 / 32, 50.0}), 1e-12, 64.0,
                   1.0 / 128)};
  const LogGridTable& t = tables[j - 1];
  if (y >= t.ymax()) return 0.0;
  if (y < t.ymin()) return phi(j, y);
  return t(y).real();
}

cplx g_even(cplx u, int A) { return std::pow(std::cos(kPi * u / (4.0 * A)), -8.0 * A); }

namespace {
std::function<cplx(cplx)> vs_kernel(cplx s, int A) {
  cplx lgs = lgamma_complex(s);
  return [s, A, lgs](cplx w) {
    return std::exp(-w * std::log(2.0 * kPi) + lgamma_complex(s + w) - lgs) * g_even(w, A);
  };
}
}  // namespace

cplx v_s(cplx s, double y, int A) {
  if (s.real() < 0.1 - 1e-12 || s.real() > 1.5 + 1e-12)
    throw Error(ErrorKind::OutOfStrip, "v_s needs Re(s) in [0.1, 1.5]");
  if (!(y > 0.0)) throw Error(ErrorKind::Config, "v_s: y must be positive");
  auto K = vs_kernel(s, A);
  cplx prev = MellinKernel(K, {1.0, 1.0 / 32, 40.0}).value(y);
  for (int level = 1; level <= 3; ++level) {
    cplx cur = MellinKernel(K, {1.0, (1.0 / 32) / (1 << level), 40.0 * (1 << level)}).value(y);
    if (std::abs(cur - prev) <= 1e-9) return cur;
    prev = cur;
  }
  throw Error(ErrorKind::QuadratureNotConverged, "v_s");
}

VsTable::VsTable(cplx s, int A)
    : s_(s), A_(A), kernel_(vs_kernel(s, A), {1.0, 1.0 / 32, 40.0}), table_(kernel_, 1e-8, 1e7, 1.0 / 64) {}

cplx VsTable::operator()(double y) const {
  if (y < table_.ymin() || y > table_.ymax()) return kernel_.value(y);
  return table_(y);
}

// Panel count starts near one panel per half oscillation of J0 and doubles
// until two rules agree to 1e-14.
double v_ddot(TestKind kind, double u_abs) {
  const double a = 4.0 * kPi * u_abs / (9.0 * std::numbers::sqrt3);
  int panels = 4 + static_cast<int>(std::ceil(a * (std::numbers::sqrt2 - 1.0) / kPi));
  double prev = v_ddot_fixed(kind, u_abs, panels);
  for (int it = 0; it < 8; ++it) {
    panels *= 2;
    double cur = v_ddot_fixed(kind, u_abs, panels);
    if (std::fabs(cur - prev) <= 1e-14) return cur;
    prev = cur;
  }
  throw Error(ErrorKind::QuadratureNotConverged, "v_ddot at |u| = " + std::to_string(u_abs));
}

double v_ddot_fixed(TestKind kind, double u_abs, int panels) {
  using boost::math::quadrature::gauss;
  const double a = 4.0 * kPi * u_abs / (9.0 * std::numbers::sqrt3);
  auto f = [&](double t) { return t * test_function(kind, t * t) * boost::math::cyl_bessel_j(0, a * t); };
  const double lo = 1.0, hi = std::numbers::sqrt2, w = (hi - lo) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) s += gauss<double, 30>::integrate(f, lo + p * w, lo + (p + 1) * w);
  return s;
}

}  // namespace cml
