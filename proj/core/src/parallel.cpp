#include "nonlocal/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nonlocal {

unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* cap = std::getenv("NONLOCAL_LAB_THREADS")) {
    try {
      const long v = std::stol(cap);
      if (v > 0 && static_cast<unsigned long>(v) < n) n = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // unparsable cap is ignored
    }
  }
  return n;
}

}  // namespace nonlocal
