#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace cml {

// CML_WORKERS if set and positive, else hardware concurrency.
int worker_count();

// Runs fn(begin, end, shard) over `shards` contiguous pieces of [0, n).
// Shard boundaries depend only on n and shards, never on scheduling.
void parallel_shards(std::size_t n, int workers, std::size_t shards,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// Neumaier summation.
class KahanSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanComplex {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

// Fixed number of shards so results do not depend on the worker count;
// partial sums merged in shard order.
std::complex<double> sharded_sum(std::size_t n, int workers,
                                 const std::function<std::complex<double>(std::size_t)>& term,
                                 std::size_t shards = 64);

}  // namespace cml
