#ifndef QUATPOLY_TOOLS_PARALLEL_HPP
#define QUATPOLY_TOOLS_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace quatpoly::tools {

/// Worker count: hardware concurrency, capped by QUATPOLY_THREADS when set.
inline unsigned worker_count()
{
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QUATPOLY_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // unparseable: ignore the cap
    }
  }
  return n;
}

/// Calls fn(i) for i in [0, count) on up to worker_count() threads. Each
/// item writes only its own slot, so results are ordered by index. If items
/// throw, the exception of the lowest failing index is rethrown, which keeps
/// error reporting independent of scheduling.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace quatpoly::tools

#endif
