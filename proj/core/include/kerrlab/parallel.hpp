#pragma once

#include <cstddef>
#include <functional>
#include <limits>

namespace kerrlab {

// Worker count: explicit value if > 0, else KERRLAB_WORKERS, else hardware_concurrency.
unsigned resolve_workers(unsigned requested);

// Runs body(begin, end, tile) on static tiles of [0, n). Tile boundaries depend only on
// n and tile count, so reductions merged in tile order are independent of scheduling.
void parallel_tiles(std::size_t n, std::size_t tiles, unsigned workers,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

struct ArgMin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = static_cast<std::size_t>(-1);

  // Ties resolved toward the smaller index.
  void merge(double v, std::size_t i) {
    if (v < value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
  void merge(const ArgMin& o) { merge(o.value, o.index); }
};

}  // namespace kerrlab
