#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cml/bias_lab.hpp"
#include "cml/cli.hpp"
#include "cml/cubic_symbol.hpp"
#include "cml/euler_products.hpp"
#include "cml/family.hpp"
#include "cml/gauss_sums.hpp"
#include "cml/lfun.hpp"
#include "cml/suite.hpp"

namespace py = pybind11;
using namespace cml;

namespace {

using Pair = std::pair<i64, i64>;
EisInt E(const Pair& p) { return {p.first, p.second}; }
Pair P(EisInt x) { return {x.a, x.b}; }

}  // namespace

PYBIND11_MODULE(_cml, m) {
  m.doc() = "cubic Hecke L-function lab";
  py::register_exception<Error>(m, "CmlError", PyExc_ValueError);

  m.def("norm", [](Pair x) { return norm(E(x)); });
  m.def("mul", [](Pair x, Pair y) { return P(E(x) * E(y)); });
  m.def("primary_associate", [](Pair x) { return P(primary_associate(E(x)).primary); });
  m.def("factor", [](Pair x) {
    std::vector<std::pair<Pair, int>> out;
    for (const auto& pp : factor(E(x)).primes) out.push_back({P(pp.pi), pp.e});
    return out;
  });
  m.def(
      "symbol",
      [](Pair a, Pair b) -> py::object {
        CubicSymbolValue v = symbol(E(a), E(b));
        if (v.zero) return py::none();
        return py::int_(v.k);
      },
      "exponent k with (a/b)_3 = omega^k, or None when not coprime");
  m.def("g3", [](Pair mu, Pair c) { return g3_fast(E(mu), E(c)); });
  m.def("g3_direct", [](Pair mu, Pair c) { return g3_direct(E(mu), E(c)); });
  m.def("tau3", [](Pair r) { return tau3(E(r)); });
  m.def("in_family", [](Pair q) { return in_f3prime(E(q)); });
  m.def("family", [](i64 hi, i64 lo) {
    std::vector<Pair> out;
    for (const EisInt& q : enumerate_f3prime(hi, lo)) out.push_back(P(q));
    return out;
  }, py::arg("hi"), py::arg("lo") = 1);
  m.def("l_half", [](Pair q, double T) {
    AfeOptions o;
    o.T = T;
    return l_half(E(q), o).L_half;
  }, py::arg("q"), py::arg("T") = 6.0);
  m.def("l_strip", [](Pair q, std::complex<double> s, double Y) { return l_strip(E(q), {1, 0}, s, Y); },
        py::arg("q"), py::arg("s"), py::arg("Y") = 1.0);
  m.def("constant", [](const std::string& name, u64 bound) { return constant(parse_constant(name), bound).value; },
        py::arg("name"), py::arg("bound") = 200000);
  m.def("c0", &c0);
  m.def("poisson_check", [](Pair q, Pair c, double M) {
    PoissonReport r = poisson_check(E(q), E(c), M);
    py::dict d;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["residual"] = r.residual;
    d["truncation_change"] = r.truncation_change;
    return d;
  });
  m.def("bias_scan", [](Pair k, i64 tmax) {
    BiasReport b = bias_scan(E(k), tmax);
    py::dict d;
    d["T"] = b.T;
    d["partial"] = b.partial;
    d["ratio"] = b.ratio;
    d["exponent"] = b.exponent;
    return d;
  });
  m.def("run_criterion", [](int id, const std::string& cache_dir) {
    SuiteOptions o;
    o.cache_dir = cache_dir;
    CriterionResult r = run_criterion(id, o);
    return py::make_tuple(r.pass, r.detail);
  }, py::arg("id"), py::arg("cache_dir") = "");
  m.def("cli", [](std::vector<std::string> args) {
    std::vector<const char*> argv{"cml"};
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int rc = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(rc, out.str(), err.str());
  });
}
