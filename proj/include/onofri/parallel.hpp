#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace onofri {

/// Worker cap used by parallel_for. Defaults to 1 (sequential).
void set_max_jobs(int jobs);
int max_jobs();

/// Runs body(i) for i in [0, n), split into contiguous chunks across at most
/// max_jobs() threads. Each index is written by exactly one worker, so results
/// do not depend on the job count. Loops shorter than `min_parallel` run inline.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_parallel = 1024) {
  const std::size_t jobs = std::min<std::size_t>(static_cast<std::size_t>(max_jobs()), n);
  if (jobs <= 1 || n < min_parallel) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (std::size_t w = 0; w < jobs; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([begin, end, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace onofri
