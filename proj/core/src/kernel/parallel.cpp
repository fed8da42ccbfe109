#include "cdlab/kernel/parallel.hpp"

namespace cdlab {

namespace {
std::atomic<unsigned> g_workers{0};
}

unsigned worker_count() {
  const unsigned forced = g_workers.load();
  if (forced > 0) return forced;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_worker_count(unsigned n) { g_workers.store(n); }

}  // namespace cdlab
