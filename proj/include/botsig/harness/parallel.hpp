#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "botsig/random_tape.hpp"

namespace botsig {

/// Runs f(t, tape_t) for t in [0, trials) over `jobs` threads. Trial tapes
/// are split from one root drawn off `tape`, so results do not depend on
/// the job count. f must be safe to call concurrently.
template <class R, class F>
std::vector<R> run_trials(std::size_t trials, RandomTape& tape, unsigned jobs, F&& f) {
  const RandomTape root = tape.split(tape.next_u64());
  std::vector<R> out(trials);
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t t = begin; t < end; ++t) {
        RandomTape trial = root.split(t);
        out[t] = f(t, trial);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  if (jobs == 1) {
    work(0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (trials + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t begin = j * chunk;
      const std::size_t end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <class R>
std::uint64_t count_true(const std::vector<R>& v) {
  return static_cast<std::uint64_t>(std::count_if(v.begin(), v.end(), [](const R& x) { return static_cast<bool>(x); }));
}

}  // namespace botsig
