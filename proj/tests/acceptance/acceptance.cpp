// Runs the fifteen acceptance criteria and prints one PASS/FAIL line each.
// Exit status is nonzero when a criterion fails that is not listed in
// --known-red; listed ones still print FAIL.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "cml/errors.hpp"
#include "cml/parallel.hpp"
#include "cml/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance checklist"};
  std::string cache, known_red, only, report;
  int workers = cml::worker_count();
  app.add_option("--cache", cache, "cache directory for L values and the Gauss table");
  app.add_option("--known-red", known_red, "comma separated ids that are expected to fail");
  app.add_option("--only", only, "comma separated ids to run");
  app.add_option("--report", report, "also write the lines to this file");
  app.add_option("--workers", workers, "worker threads");
  CLI11_PARSE(app, argc, argv);

  auto ids = [](const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.insert(std::stoi(tok));
    return out;
  };
  cml::SuiteOptions opt;
  opt.cache_dir = cache;
  opt.workers = workers;
  opt.ids = ids(only);
  const std::set<int> red = ids(known_red);

  std::ofstream rep;
  if (!report.empty()) rep.open(report);
  int unexpected = 0, passed = 0, total = 0;
  try {
    cml::run_suite(opt, [&](const cml::CriterionResult& r) {
      std::string line = cml::format_result(r);
      if (!r.pass && red.count(r.id)) line += "  (known red)";
      if (r.pass && red.count(r.id)) line += "  (listed as known red but passed)";
      std::cout << line << std::endl;
      if (rep) rep << line << "\n";
      ++total;
      passed += r.pass;
      if (!r.pass && !red.count(r.id)) ++unexpected;
    });
  } catch (const cml::Error& e) {
    std::cout << "error: " << e.what() << std::endl;
    return e.kind() == cml::ErrorKind::CacheMismatch ? 4 : 1;
  }
  std::ostringstream s;
  s << passed << "/" << total << " criteria pass";
  if (passed < total) s << ", " << (total - passed - unexpected) << " known red, " << unexpected << " unexpected";
  std::cout << s.str() << std::endl;
  if (rep) rep << s.str() << "\n";
  return unexpected ? 1 : 0;
}
