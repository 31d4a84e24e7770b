#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace tmpcfg {

/// Runs work(i) for i in [0, count) on `threads` workers and hands each result
/// to emit(i, result) on the calling thread in increasing i, so the output
/// order never depends on the worker count.
template <class Work, class Emit>
void ordered_parallel(std::size_t count, int threads, Work&& work, Emit&& emit) {
  using Result = decltype(work(std::size_t{0}));
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) emit(i, work(i));
    return;
  }

  std::vector<std::optional<Result>> slots(count);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;

  auto loop = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || stop.load()) return;
      try {
        Result r = work(i);
        std::lock_guard lock(mu);
        slots[i].emplace(std::move(r));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
      ready.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(loop);

  std::exception_ptr emitFailure;
  for (std::size_t i = 0; i < count && !emitFailure; ++i) {
    std::optional<Result> r;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return slots[i].has_value() || failure; });
      if (!slots[i]) break;
      r.swap(slots[i]);
    }
    try {
      emit(i, std::move(*r));
    } catch (...) {
      emitFailure = std::current_exception();
      stop = true;
    }
  }
  for (auto& t : pool) t.join();
  if (emitFailure) std::rethrow_exception(emitFailure);
  if (failure) std::rethrow_exception(failure);
}

}  // namespace tmpcfg
