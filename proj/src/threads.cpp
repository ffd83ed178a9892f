#include "cq/threads.hpp"

#include <cstdlib>
#include <string>

namespace cq {

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("CQ_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) n = std::min(n, cap);
    } catch (...) {
      // ignore malformed values
    }
  }
  return n;
}

}  // namespace cq
