#ifndef MN22_PARALLEL_HPP
#define MN22_PARALLEL_HPP

// Minimal deterministic parallel-for.  The worker count is controlled by the
// MN22_THREADS environment variable (default 1, i.e. serial).  Work items are
// split into contiguous index blocks so that any per-index results can be
// reduced in index order, keeping output independent of the thread count.

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "mn22/errors.hpp"

namespace mn22 {

inline int thread_count() {
  const char* env = std::getenv("MN22_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  int n = 0;
  try {
    n = std::stoi(env);
  } catch (const std::exception&) {
    throw ParseError("MN22_THREADS must be a positive integer, got '" + std::string(env) + "'");
  }
  if (n < 1) throw ParseError("MN22_THREADS must be a positive integer");
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0 && n > static_cast<int>(hw)) n = static_cast<int>(hw);
  return n;
}

// Calls fn(i) for i in [0, count).  With multiple threads, indices are split
// into contiguous blocks, one thread per block; fn must be safe to run
// concurrently for distinct i.  Exceptions from workers are rethrown (the
// first one in index order).
template <typename Fn>
void parallel_for(long count, Fn&& fn) {
  if (count <= 0) return;
  const int workers = thread_count();
  if (workers <= 1 || count == 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  const int use = static_cast<int>(std::min<long>(workers, count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(use));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(use));
  const long chunk = (count + use - 1) / use;
  for (int w = 0; w < use; ++w) {
    const long lo = static_cast<long>(w) * chunk;
    const long hi = std::min(count, lo + chunk);
    pool.emplace_back([&, w, lo, hi]() {
      try {
        for (long i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace mn22

#endif  // MN22_PARALLEL_HPP
