#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "cml/special.hpp"

namespace cml {

enum class TestKind { Bump, Smoothstep };
TestKind parse_test_kind(const std::string& s);
const char* test_kind_name(TestKind k);

// Supported in (1, 2), values in [0, 1].
double test_function(TestKind kind, double t);
// F-check(w) = int_0^inf F(t) t^w dt, adaptive Gauss-Kronrod to 1e-10.
cplx f_check(TestKind kind, cplx w);
// Composite Simpson on n panels, an independent rule for cross-checks.
double f_check_simpson(TestKind kind, double w, int n);

// Vertical line Re w = c, trapezoid step h, |Im w| <= height.
struct Contour {
  double c = 2.0;
  double h = 1.0 / 64;
  double height = 60.0;
};

// Stores K(w_k) on the nodes of a contour and evaluates
//   f(y)       = (1/2 pi i) int K(w) y^{-w} dw / w
//   y f'(y)    = -(1/2 pi i) int K(w) y^{-w} dw
class MellinKernel {
 public:
  MellinKernel(const std::function<cplx(cplx)>& K, Contour contour);
  cplx value(double y) const;
  cplx log_derivative(double y) const;
  const Contour& contour() const { return contour_; }

 private:
  Contour contour_;
  std::vector<double> t_;
  std::vector<cplx> kw_;  // K(w) / w
  std::vector<cplx> k_;   // K(w)
};

// Phi_j by the inverse Mellin integral. Canonical contour Re w = 2, step
// 1/64, height 60, refined until successive values agree to 1e-9. Below
// y = 1e-3 the line moves to Re w = 1/2 to keep y^{-w} from amplifying
// rounding error.
double phi(int j, double y);
double phi_on(int j, double y, Contour contour);

// Cubic Hermite on a geometric grid (values and log-derivatives from the
// same Mellin integral). Used in every hot loop.
class LogGridTable {
 public:
  LogGridTable(const MellinKernel& kernel, double ymin, double ymax, double step);
  LogGridTable() = default;
  cplx operator()(double y) const;
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }

 private:
  double lmin_ = 0, step_ = 1, ymin_ = 0, ymax_ = 0;
  std::vector<cplx> f_, d_;
  cplx below_{1.0, 0.0};
};

// Shared tables for Phi_1 and Phi_2 on [1e-12, 64]; zero above.
double phi_fast(int j, double y);

// G(u) = cos(pi u / (4A))^{-8A}
cplx g_even(cplx u, int A);
// V_s(y) = (1/2 pi i) int_{(1)} (2 pi)^{-w} y^{-w} G(w) Gamma(s + w) / Gamma(s) dw / w
cplx v_s(cplx s, double y, int A = 2);

class VsTable {
 public:
  VsTable(cplx s, int A = 2);
  cplx operator()(double y) const;

 private:
  cplx s_;
  int A_;
  MellinKernel kernel_;
  LogGridTable table_;
};

// int_0^inf t V(t^2) J0(4 pi t |u| / (9 sqrt 3)) dt with V = test_function(kind)
double v_ddot(TestKind kind, double u_abs);
// 30-point Gauss-Legendre on `panels` equal panels; for refinement checks.
double v_ddot_fixed(TestKind kind, double u_abs, int panels);

}  // namespace cml
