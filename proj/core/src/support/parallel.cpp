#include "diqss/support/parallel.hpp"

#include <cstdlib>
#include <string>

namespace diqss::support {

int thread_cap() {
  if (const char* env = std::getenv("DIQSS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace diqss::support
