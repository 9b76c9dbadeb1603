#include <doctest.h>

#include "kerrlab/parallel.hpp"

#include <atomic>
#include <stdexcept>
#include <vector>

using namespace kerrlab;

TEST_CASE("explicit worker count wins") {
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("tiles cover the range exactly once") {
  for (unsigned w : {1u, 4u}) {
    std::vector<std::atomic<int>> hits(1003);
    parallel_tiles(hits.size(), 17, w, [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i) hits[i]++;
    });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("exceptions propagate from workers") {
  CHECK_THROWS_AS(parallel_tiles(100, 10, 4,
                                 [](std::size_t b, std::size_t, std::size_t) {
                                   if (b >= 50) throw std::runtime_error("tile");
                                 }),
                  std::runtime_error);
}

TEST_CASE("argmin ties go to the smaller index") {
  ArgMin m;
  m.merge(2.0, 5);
  m.merge(1.0, 9);
  m.merge(1.0, 3);
  m.merge(1.5, 1);
  CHECK(m.value == 1.0);
  CHECK(m.index == 3);
  ArgMin other;
  other.merge(1.0, 2);
  m.merge(other);
  CHECK(m.index == 2);
}
