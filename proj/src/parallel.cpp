#include "cml/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace cml {

int worker_count() {
  if (const char* env = std::getenv("CML_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

void parallel_shards(std::size_t n, int workers, std::size_t shards,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (shards == 0) shards = 1;
  auto bound = [&](std::size_t s) { return n * s / shards; };
  if (workers <= 1 || shards == 1) {
    for (std::size_t s = 0; s < shards; ++s) fn(bound(s), bound(s + 1), s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    while (true) {
      std::size_t s = next.fetch_add(1);
      if (s >= shards) return;
      try {
        fn(bound(s), bound(s + 1), s);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  int nt = std::min<int>(workers, static_cast<int>(shards));
  for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  std::size_t shards = std::max<std::size_t>(1, std::min<std::size_t>(n, static_cast<std::size_t>(workers) * 8));
  parallel_shards(n, workers, shards, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) fn(i);
  });
}

void KahanSum::add(double x) {
  double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

std::complex<double> sharded_sum(std::size_t n, int workers,
                                 const std::function<std::complex<double>(std::size_t)>& term,
                                 std::size_t shards) {
  std::vector<KahanComplex> partial(shards);
  parallel_shards(n, workers, shards, [&](std::size_t b, std::size_t e, std::size_t s) {
    for (std::size_t i = b; i < e; ++i) partial[s].add(term(i));
  });
  KahanComplex total;
  for (auto& p : partial) total.add(p.value());
  return total.value();
}

}  // namespace cml
