#include "cml/special.hpp"

#include <cmath>
#include <numbers>

#include "cml/errors.hpp"

namespace cml {

namespace {
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
// B_{2k} / (2k)!
constexpr double kBernoulliOverFact[] = {1.0 / 12,           -1.0 / 720,          1.0 / 30240,
                                         -1.0 / 1209600,     1.0 / 47900160,      -691.0 / 1307674368000.0,
                                         1.0 / 74724249600.0, -3617.0 / 10670622842880000.0};
}  // namespace

cplx lgamma_complex(cplx z) {
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    return std::log(pi) - std::log(std::sin(pi * z)) - lgamma_complex(1.0 - z);
  }
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0)) throw Error(ErrorKind::DivergentArgument, "hurwitz_zeta needs s > 1");
  constexpr int kN = 24;
  double sum = 0.0;
  for (int n = kN - 1; n >= 0; --n) sum += std::pow(n + a, -s);
  const double x = kN + a;
  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  double rising = s;  // s (s+1) ... (s + 2k - 2)
  double xp = std::pow(x, -s - 1.0);
  for (int k = 0; k < 8; ++k) {
    sum += kBernoulliOverFact[k] * rising * xp;
    rising *= (s + 2 * k + 1) * (s + 2 * k + 2);
    xp /= x * x;
  }
  return sum;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

double dirichlet_l_minus3(double s) {
  return std::pow(3.0, -s) * (hurwitz_zeta(s, 1.0 / 3.0) - hurwitz_zeta(s, 2.0 / 3.0));
}

}  // namespace cml
