#include "morreylab/parallel.hpp"

#include <oneapi/tbb/blocked_range.h>
#include <oneapi/tbb/parallel_for.h>
#include <oneapi/tbb/task_arena.h>

#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace morreylab {

int thread_cap() {
  static const int cap = [] {
    const char* env = std::getenv("MORREYLAB_THREADS");
    if (env != nullptr) {
      try {
        const int v = std::stoi(env);
        if (v >= 1) return v;
      } catch (const std::exception&) {
      }
    }
    return tbb::this_task_arena::max_concurrency();
  }();
  return cap;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  if (thread_cap() == 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  static tbb::task_arena arena(thread_cap());
  arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, count),
                      [&](const tbb::blocked_range<std::size_t>& r) {
                        for (std::size_t i = r.begin(); i != r.end(); ++i) body(i);
                      });
  });
}

ArgMax parallel_argmax(std::size_t count, const std::function<double(std::size_t)>& fn) {
  std::vector<double> values(count);
  parallel_for(count, [&](std::size_t i) { values[i] = fn(i); });
  ArgMax best{-std::numeric_limits<double>::infinity(), count};
  for (std::size_t i = 0; i < count; ++i) {
    if (values[i] > best.value || (best.index == count && values[i] == best.value)) {
      best = {values[i], i};
    }
  }
  return best;
}

}  // namespace morreylab
