#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace cml {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  std::string cache_dir;  // L-value and Gauss-table caches; empty disables
  int workers = 1;
  std::set<int> ids;      // empty = all fifteen
};

inline constexpr int kCriteriaCount = 15;
// Subset that finishes in well under a minute on one core.
std::set<int> fast_criteria();
std::string criterion_name(int id);

CriterionResult run_criterion(int id, const SuiteOptions& opt);
std::vector<CriterionResult> run_suite(const SuiteOptions& opt,
                                       const std::function<void(const CriterionResult&)>& on_result = {});
std::string format_result(const CriterionResult& r);

std::string gauss_cache_path(const std::string& cache_dir);

}  // namespace cml
