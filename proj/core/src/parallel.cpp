#include "kerrlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace kerrlab {

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KERRLAB_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_tiles(std::size_t n, std::size_t tiles, unsigned workers,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  tiles = std::clamp<std::size_t>(tiles, 1, n);
  const auto bounds = [&](std::size_t t) { return n * t / tiles; };
  workers = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(tiles));
  if (workers <= 1) {
    for (std::size_t t = 0; t < tiles; ++t) body(bounds(t), bounds(t + 1), t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tiles;) {
      try {
        body(bounds(t), bounds(t + 1), t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace kerrlab
