#include "fracmean/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fracmean {

std::size_t worker_count() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACMEAN_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) return std::min<std::size_t>(hw, static_cast<std::size_t>(cap));
    } catch (...) {
      // ignore malformed values
    }
  }
  return hw;
}

}  // namespace fracmean
