#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cml/euler_products.hpp"
#include "cml/lfun.hpp"

namespace cml {

// Primary squarefree q = 1 (mod 9) with lo < N(q) <= hi, q != 1, ordered by
// (norm, a, b).
std::vector<EisInt> enumerate_f3prime(i64 hi, i64 lo = 1);
// Pairs (q1, q2) with q1 q2 squarefree, coprime, q1 q2^2 = 1 (mod 9),
// q1 q2^2 != 1, N(q1 q2) <= hi.
struct F3Element {
  EisInt q1, q2;
  EisInt q() const { return q1 * q2 * q2; }
};
std::vector<F3Element> enumerate_f3(i64 hi);
double f3prime_window_prediction(double X);  // expected count in (X, 2X]

int m_y(EisInt q, double Y);
int r_y(EisInt q, double Y);

// S, S_M and the signed and absolute remainder sums for random beta in
// [-1, 1] over all q = 1 (mod 9) with N(q) in the window of F.
struct SmDecomposition {
  double S = 0, S_M = 0, S_R_signed = 0, S_R_abs = 0;
};
SmDecomposition sm_decomposition(double X, double Y, TestKind kind, unsigned seed);

// On-disk L(1/2) values, keyed by the truncation constant in the header.
class LCache {
 public:
  struct Entry {
    cplx L;
    i64 terms = 0;
    double tail = 0.0;
  };
  LCache() = default;
  LCache(std::string dir, double T);
  // Throws CacheMismatch when the file was written with another truncation.
  void load();
  const Entry* find(EisInt q) const;
  void put(EisInt q, const Entry& e);
  void flush();  // appends rows added since load
  std::size_t size() const { return map_.size(); }
  std::string path() const;
  bool enabled() const { return !dir_.empty(); }

 private:
  std::string dir_;
  double T_ = 6.0;
  std::unordered_map<EisInt, Entry, EisHash> map_;
  std::vector<std::pair<EisInt, Entry>> pending_;
};

struct LBatch {
  std::vector<EisInt> qs;
  std::vector<LCache::Entry> values;
};
// L(1/2, chi_q) for all q, reusing and extending the cache.
LBatch l_values(const std::vector<EisInt>& qs, const AfeOptions& opt, LCache* cache, int workers);

enum class MomentKind { First, Second, Nonvanishing, MollifiedFirst, MollifiedSecond };

struct MomentReport {
  double X = 0;
  TestKind F = TestKind::Bump;
  MomentKind kind = MomentKind::First;
  cplx raw;
  double prediction = 0;
  double ratio = 0;
  double slope = 0, intercept = 0;  // second moment fit, filled by fit_second_moment
  i64 count = 0;
  double weight = 0;  // sum of F(N(q)/X)
  double max_tail = 0;
  double sharp_fraction = 0;  // nonvanishing only
  double wall_seconds = 0;
};

struct MomentOptions {
  AfeOptions afe;
  int workers = 1;
  LCache* cache = nullptr;
};

MomentReport moment(MomentKind kind, double X, TestKind F, const MomentOptions& opt);

struct AffineFit {
  double slope = 0, intercept = 0, predicted_slope = 0, slope_ratio = 0;
  std::vector<MomentReport> points;
};
// Least squares of S2 / X against log X; intercept is b in a (log X + b).
AffineFit fit_second_moment(const std::vector<double>& xs, TestKind F, const MomentOptions& opt);

struct MollifierSpec {
  double theta = 0;
  double M = 1;
  double C = 0, D = 0;
  std::vector<EisInt> support;  // primary generators of squarefree ideals, N <= M
  std::unordered_map<EisInt, double, EisHash> xi, lambda;
};
MollifierSpec build_mollifier(double theta, double X);
// Same construction with an explicit length M (theta recorded as log M / log X = 0).
MollifierSpec build_mollifier_length(double M);
double q1_via_lambda(const MollifierSpec& m);
double q1_via_xi(const MollifierSpec& m);
cplx mollifier_value(const MollifierSpec& m, EisInt q);
double mollifier_triangle_bound(const MollifierSpec& m);

struct MollifiedReport {
  MomentReport first, second;
  double cs_ratio = 0;  // |S1|^2 / (S0 S2)
  double theta_ratio = 0;  // theta / (theta + 1)
  double q1_lambda = 0, q1_xi = 0;
};
MollifiedReport mollified_moment(double X, const MollifierSpec& m, TestKind F, const MomentOptions& opt);

const char* moment_kind_name(MomentKind k);
MomentKind parse_moment_kind(const std::string& s);

}  // namespace cml
