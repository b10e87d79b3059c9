#pragma once

#include <cstddef>
#include <functional>

namespace morreylab {

/// Worker cap, read once from MORREYLAB_THREADS (unset or invalid: hardware default).
int thread_cap();

/// Runs body(i) for i in [0, count). Each index must write only its own output slot.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace morreylab

namespace morreylab {

/// Largest value and its first index; NaN never wins. Index is count when empty.
struct ArgMax {
  double value;
  std::size_t index;
};

/// Evaluates fn on [0, count) in parallel and reduces to the first maximum.
ArgMax parallel_argmax(std::size_t count, const std::function<double(std::size_t)>& fn);

}  // namespace morreylab
