#include "cml/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "cml/bias_lab.hpp"
#include "cml/errors.hpp"
#include "cml/euler_products.hpp"
#include "cml/family.hpp"
#include "cml/parallel.hpp"
#include "cml/suite.hpp"

namespace cml {

namespace {

struct AssertionFailure {
  std::string what;
};

std::set<int> parse_ids(const std::string& s) {
  std::set<int> ids;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    int id = 0;
    try {
      id = std::stoi(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Config, "bad criterion id '" + tok + "'");
    }
    criterion_name(id);
    ids.insert(id);
  }
  return ids;
}

std::string cplx_str(cplx z) { return fmt17(z.real()) + "," + fmt17(z.imag()); }

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  CsvTable t({"name", "value", "prime_bound", "successive_diff", "tail_estimate", "raw"});
  t.embed(cfg);
  for (ConstantName n : {ConstantName::C, ConstantName::D, ConstantName::c0, ConstantName::scriptP,
                         ConstantName::scriptP_alt, ConstantName::C1}) {
    const EulerProductResult r = constant(n, cfg.bound, cfg.workers);
    t.row({r.name, fmt17(r.value), std::to_string(r.prime_norm_bound), fmt17(r.successive_diff),
           fmt17(r.tail_estimate), fmt17(r.raw)});
  }
  const double p1 = remarkable_identity(cfg.bound);
  t.row({"P1", fmt17(p1), std::to_string(cfg.bound), "", "", fmt17(p1)});
  t.save(cfg.csv, out);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CsvTable t({"check", "value", "bound", "pass"});
  t.embed(cfg);
  bool ok = true;
  auto add = [&](const std::string& name, double v, double bound) {
    const bool p = v <= bound;
    ok = ok && p;
    t.row({name, fmt17(v), fmt17(bound), p ? "1" : "0"});
  };
  if (cfg.q.empty() || cfg.q == "1,0") {
    SuiteOptions so;
    so.workers = cfg.workers;
    for (int id : {1, 2, 3, 5, 6, 13}) {
      const CriterionResult r = run_criterion(id, so);
      err << format_result(r) << "\n";
      ok = ok && r.pass;
      t.row({r.name, r.detail.empty() ? "" : "\"" + r.detail + "\"", "", r.pass ? "1" : "0"});
    }
  } else {
    const EisInt q = parse_eis(cfg.q);
    require_f3prime(q);
    AfeOptions o;
    o.T = cfg.afe_T;
    const bool small = norm(q) <= o.a2_cap;
    const LValueRecord r = l_half(q, o, small);
    AfeOptions o2 = o;
    o2.T = cfg.afe_T + 4.0;
    const LValueRecord r2 = l_half(q, o2);
    t.comment("L(1/2) = " + cplx_str(r.L_half) + " tail " + fmt17(r.afe_tail_bound));
    add("afe_truncation_shift", std::abs(r.L_half - r2.L_half), 1e-8);
    add("strip_vs_half", std::abs(l_strip(q, {1, 0}, {0.5, 0.0}, 1.0) - r.L_half), 1e-8);
    if (small) {
      const double l2 = std::norm(r.L_half);
      add("a2_relative", std::fabs(l2 - 2 * r.a2) / std::max(l2, 1e-300), 1e-6);
    }
    const RootNumber rn = root_number(q, {1, 0}, norm(q) <= 200000);
    if (norm(q) <= 200000) add("root_number", std::abs(rn.direct - rn.product), 1e-8);
    add("root_number_modulus", std::fabs(std::abs(rn.product) - 1.0), 1e-8);
  }
  t.save(cfg.csv, out);
  if (!ok) throw AssertionFailure{"verify"};
  return kExitOk;
}

std::vector<double> moment_grid(double X, int k) {
  if (k < 1) throw Error(ErrorKind::Config, "grid must be >= 1");
  std::vector<double> xs;
  for (int j = k - 1; j >= 0; --j) xs.push_back(std::round(X * std::pow(10.0, -0.5 * j)));
  return xs;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const TestKind F = parse_test_kind(cfg.f);
  if (cfg.x < 100 || cfg.x > 2e6) throw Error(ErrorKind::Config, "x must lie in [100, 2e6]");
  const std::vector<double> xs = moment_grid(cfg.x, cfg.grid);
  LCache cache(cfg.cache_dir, cfg.afe_T);
  cache.load();
  MomentOptions mo;
  mo.afe.T = cfg.afe_T;
  mo.workers = cfg.workers;
  mo.cache = &cache;
  CsvTable t({"X", "mode", "f", "count", "weight", "re_raw", "im_raw", "prediction", "ratio", "max_tail",
              "sharp_fraction", "cs_ratio"});
  t.embed(cfg);
  auto add = [&](const MomentReport& r, const std::string& mode, double cs) {
    t.row({fmt17(r.X), mode, test_kind_name(r.F), std::to_string(r.count), fmt17(r.weight), fmt17(r.raw.real()),
           fmt17(r.raw.imag()), fmt17(r.prediction), fmt17(r.ratio), fmt17(r.max_tail), fmt17(r.sharp_fraction),
           fmt17(cs)});
    err << mode << " X=" << r.X << " ratio=" << fmt(r.ratio, 6) << " (" << fmt(r.wall_seconds, 3) << "s)\n";
  };
  if (cfg.mode == "mollified") {
    for (double X : xs) {
      const MollifierSpec spec = build_mollifier(cfg.theta, X);
      const MollifiedReport r = mollified_moment(X, spec, F, mo);
      add(r.first, "mollified_first", r.cs_ratio);
      add(r.second, "mollified_second", r.cs_ratio);
      t.comment("X " + fmt17(X) + ": M " + fmt17(spec.M) + " support " + std::to_string(spec.support.size()) +
                " Q1 " + fmt17(r.q1_lambda) + " / " + fmt17(r.q1_xi) + " theta_ratio " + fmt17(r.theta_ratio));
    }
  } else {
    const MomentKind kind = parse_moment_kind(cfg.mode);
    if (kind == MomentKind::MollifiedFirst || kind == MomentKind::MollifiedSecond)
      throw Error(ErrorKind::Config, "use --mode mollified");
    if (kind == MomentKind::Second && xs.size() >= 2) {
      const AffineFit fit = fit_second_moment(xs, F, mo);
      for (const auto& r : fit.points) add(r, cfg.mode, 0.0);
      t.comment("fit S2/X = a (log X + b): a " + fmt17(fit.slope) + " b " + fmt17(fit.intercept) + " predicted a " +
                fmt17(fit.predicted_slope) + " ratio " + fmt17(fit.slope_ratio));
    } else {
      for (double X : xs) add(moment(kind, X, F, mo), cfg.mode, 0.0);
    }
  }
  t.comment("AFE truncation T " + fmt17(cfg.afe_T) + "; L cache " + (cache.enabled() ? cache.path() : "off"));
  t.save(cfg.csv, out);
  return kExitOk;
}

int cmd_bias(const RunConfig& cfg, std::ostream& out) {
  const EisInt k = parse_eis(cfg.k);
  if (cfg.tmax < 1000 || cfg.tmax > kBiasCap) throw Error(ErrorKind::Config, "tmax must lie in [1000, 1e7]");
  gauss_table().ensure(cfg.tmax, gauss_cache_path(cfg.cache_dir), cfg.workers);
  const BiasReport b = bias_scan(k, cfg.tmax, cfg.workers);
  CsvTable t({"T", "re_partial", "im_partial", "re_predicted", "im_predicted", "ratio"});
  t.embed(cfg);
  t.comment("exponent " + fmt17(b.exponent) + " final_ratio " + fmt17(b.final_ratio));
  for (std::size_t i = 0; i < b.T.size(); ++i)
    t.row({fmt17(b.T[i]), fmt17(b.partial[i].real()), fmt17(b.partial[i].imag()), fmt17(b.predicted[i].real()),
           fmt17(b.predicted[i].imag()), fmt17(b.ratio[i])});
  t.save(cfg.csv, out);
  return kExitOk;
}

int cmd_sieve(const RunConfig& cfg, std::ostream& out) {
  const SieveReport r = large_sieve_ratio(cfg.a, cfg.b, cfg.trials, static_cast<unsigned>(cfg.seed), cfg.workers);
  CsvTable t({"trial", "ratio"});
  t.embed(cfg);
  t.comment("moduli " + std::to_string(r.count_a) + " coefficients " + std::to_string(r.count_b) + " max_ratio " +
            fmt17(r.max_ratio));
  for (std::size_t i = 0; i < r.ratios.size(); ++i) t.row({std::to_string(i), fmt17(r.ratios[i])});
  t.save(cfg.csv, out);
  return kExitOk;
}

int cmd_poisson(const RunConfig& cfg, std::ostream& out) {
  const EisInt q = parse_eis(cfg.q), c = parse_eis(cfg.c);
  if (!(cfg.m > 0) || cfg.m > 5000) throw Error(ErrorKind::Config, "m must lie in (0, 5000]");
  const PoissonReport r = poisson_check(q, c, cfg.m);
  CsvTable t({"q", "c", "M", "re_lhs", "im_lhs", "re_rhs", "im_rhs", "residual", "truncation_change",
              "k_norm_bound", "k_terms"});
  t.embed(cfg);
  t.row({"\"" + cfg.q + "\"", "\"" + cfg.c + "\"", fmt17(cfg.m), fmt17(r.lhs.real()), fmt17(r.lhs.imag()),
         fmt17(r.rhs.real()), fmt17(r.rhs.imag()), fmt17(r.residual), fmt17(r.truncation_change),
         std::to_string(r.k_norm_bound), std::to_string(r.k_terms)});
  t.save(cfg.csv, out);
  if (r.residual > 1e-6) throw AssertionFailure{"poisson residual " + fmt(r.residual, 3)};
  return kExitOk;
}

int cmd_suite(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SuiteOptions so;
  so.cache_dir = cfg.cache_dir;
  so.workers = cfg.workers;
  if (!cfg.only.empty()) {
    so.ids = parse_ids(cfg.only);
  } else if (cfg.level == "fast") {
    so.ids = fast_criteria();
  } else if (cfg.level != "full") {
    throw Error(ErrorKind::Config, "level must be fast or full");
  }
  CsvTable t({"id", "name", "pass", "seconds", "detail"});
  t.embed(cfg);
  int failed = 0;
  run_suite(so, [&](const CriterionResult& r) {
    err << format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
    t.row({std::to_string(r.id), r.name, r.pass ? "1" : "0", fmt(r.seconds, 4), "\"" + r.detail + "\""});
  });
  t.save(cfg.csv, out);
  if (failed) throw AssertionFailure{std::to_string(failed) + " criteria failed"};
  return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg_in, std::ostream& out, std::ostream& err) {
  RunConfig cfg = cfg_in;
  if (cfg.workers <= 0) cfg.workers = worker_count();
  try {
    if (cfg.command == "constants") return cmd_constants(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "moments") return cmd_moments(cfg, out, err);
    if (cfg.command == "bias") return cmd_bias(cfg, out);
    if (cfg.command == "sieve-probe") return cmd_sieve(cfg, out);
    if (cfg.command == "poisson") return cmd_poisson(cfg, out);
    if (cfg.command == "suite") return cmd_suite(cfg, out, err);
    throw Error(ErrorKind::Config, "unknown command '" + cfg.command + "'");
  } catch (const AssertionFailure& a) {
    err << "assertion failure: " << a.what << "\n";
    return kExitAssertion;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::CacheMismatch: return kExitCache;
      case ErrorKind::QuadratureNotConverged:
      case ErrorKind::Overflow: return kExitRuntime;
      default: return kExitConfig;
    }
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.workers = 0;
  // A config file supplies defaults; explicit flags override it.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream is(argv[i + 1]);
      if (!is) {
        err << "error: cannot read config " << argv[i + 1] << "\n";
        return kExitConfig;
      }
      std::stringstream ss;
      ss << is.rdbuf();
      try {
        cfg = RunConfig::parse(ss.str());
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
      }
    }
  }
  if (const char* env = std::getenv("CML_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w < 1) throw std::invalid_argument("");
      cfg.workers = w;
    } catch (const std::exception&) {
      err << "error: CML_WORKERS must be a positive integer\n";
      return kExitConfig;
    }
  }

  CLI::App app{"cubic Hecke L-function lab"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file with defaults");
  app.add_option("--workers", cfg.workers, "worker threads (default CML_WORKERS or all cores)");
  app.add_option("--seed", cfg.seed, "random seed");

  auto* constants = app.add_subcommand("constants", "Euler-product constants as CSV");
  constants->add_option("--bound", cfg.bound, "prime norm bound");
  constants->add_option("--csv", cfg.csv, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "identity checks, or AFE checks for one conductor");
  verify->add_option("--q", cfg.q, "conductor \"a,b\" in the squarefree family");
  verify->add_option("--afe-t", cfg.afe_T, "AFE truncation constant");
  verify->add_option("--csv", cfg.csv, "output path");

  auto* moments = app.add_subcommand("moments", "family moments of L(1/2)");
  moments->add_option("--x", cfg.x, "largest X; the window is (X, 2X]");
  moments->add_option("--grid", cfg.grid, "number of X values, half a decade apart, ending at --x");
  moments->add_option("--f", cfg.f, "bump | smoothstep");
  moments->add_option("--mode", cfg.mode, "first | second | nonvanishing | mollified");
  moments->add_option("--theta", cfg.theta, "mollifier length exponent");
  moments->add_option("--afe-t", cfg.afe_T, "AFE truncation constant");
  moments->add_option("--csv", cfg.csv, "output path");
  moments->add_option("--cache", cfg.cache_dir, "L-value cache directory");

  auto* bias = app.add_subcommand("bias", "partial sums of normalized Gauss sums");
  bias->add_option("--k", cfg.k, "shift \"a,b\"");
  bias->add_option("--tmax", cfg.tmax, "largest norm");
  bias->add_option("--csv", cfg.csv, "output path");
  bias->add_option("--cache", cfg.cache_dir, "Gauss table cache directory");

  auto* sieve = app.add_subcommand("sieve-probe", "large sieve ratio for random coefficients");
  sieve->add_option("--a", cfg.a, "modulus norm bound");
  sieve->add_option("--b", cfg.b, "coefficient norm bound");
  sieve->add_option("--trials", cfg.trials, "number of random coefficient vectors");
  sieve->add_option("--seed", cfg.seed, "random seed");
  sieve->add_option("--csv", cfg.csv, "output path");

  auto* poisson = app.add_subcommand("poisson", "both sides of the twisted Poisson formula");
  poisson->add_option("--q", cfg.q, "primary modulus \"a,b\", N(q) <= 50");
  poisson->add_option("--c", cfg.c, "residue class mod 9 \"a,b\"");
  poisson->add_option("--m", cfg.m, "scale M");
  poisson->add_option("--csv", cfg.csv, "output path");

  auto* suite = app.add_subcommand("suite", "acceptance checklist");
  suite->add_option("--level", cfg.level, "fast | full");
  suite->add_option("--only", cfg.only, "comma separated criterion ids");
  suite->add_option("--cache", cfg.cache_dir, "cache directory");
  suite->add_option("--csv", cfg.csv, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg, out, err);
}

}  // namespace cml
