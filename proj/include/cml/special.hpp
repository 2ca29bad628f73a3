#pragma once

#include <complex>

namespace cml {

using cplx = std::complex<double>;

// Lanczos (g = 7, n = 9) with reflection for Re z < 1/2.
cplx lgamma_complex(cplx z);
inline cplx gamma_complex(cplx z) { return std::exp(lgamma_complex(z)); }

// Euler-Maclaurin, real s > 1, a > 0.
double hurwitz_zeta(double s, double a);
double riemann_zeta(double s);
// L(s, chi_{-3}) = 3^{-s} (zeta(s, 1/3) - zeta(s, 2/3))
double dirichlet_l_minus3(double s);

}  // namespace cml
