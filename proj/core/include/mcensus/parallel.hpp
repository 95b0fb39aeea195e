#pragma once

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace mcensus {

inline int default_workers() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

inline int clamp_workers(int workers) {
  if (workers <= 0) return default_workers();
  return workers;
}

// Contiguous near-equal split of [0, total) into at most `parts` ranges.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(std::uint64_t total,
                                                                        int parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (parts < 1) parts = 1;
  std::uint64_t p = static_cast<std::uint64_t>(parts);
  if (p > total) p = total == 0 ? 1 : total;
  std::uint64_t base = total / p, rem = total % p;
  std::uint64_t at = 0;
  for (std::uint64_t i = 0; i < p; ++i) {
    std::uint64_t len = base + (i < rem ? 1 : 0);
    out.emplace_back(at, at + len);
    at += len;
  }
  return out;
}

// Runs fn(0..workers-1) on `workers` threads and joins. Exceptions from
// workers are rethrown on the calling thread (first one wins).
template <class Fn>
void run_workers(int workers, Fn&& fn) {
  workers = clamp_workers(workers);
  if (workers == 1) {
    fn(0);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        errs[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace mcensus
