#ifndef SAVER_PARALLEL_HPP
#define SAVER_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace saver {

// Worker cap, taken from the SAVER_THREADS environment variable.
// Unset or 0 means "use the hardware concurrency".
inline unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("SAVER_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  long value = std::strtol(env, &end, 10);
  if (end == env || value < 0) return hw;
  if (value == 0) return hw;
  return static_cast<unsigned>(value);
}

// Applies fn(i) for i in [0, n). Each index is independent, so the result
// cannot depend on scheduling. The first exception thrown by any worker is
// rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1 || n < 1024) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace saver

#endif  // SAVER_PARALLEL_HPP
