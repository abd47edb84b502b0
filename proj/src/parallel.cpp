#include "qcrib/parallel.hpp"

#include <atomic>

namespace qcrib {

namespace {
std::atomic<bool> g_parallel{false};
}

void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }
bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

}  // namespace qcrib
