#include <atomic>
#include <vector>

#include "doctest.h"
#include "latfol/parallel.hpp"

using namespace latfol;

TEST_CASE("every index runs exactly once") {
  for (int threads : {1, 2, 8}) {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("disjoint-slot results are identical across thread counts") {
  auto run = [](int threads) {
    std::vector<double> out(1000);
    parallel_for(out.size(), threads,
                 [&](std::size_t i) { out[i] = 1.0 / (1.0 + i * i); });
    return out;
  };
  CHECK(run(1) == run(8));
}

TEST_CASE("zero tasks and more threads than tasks are fine") {
  parallel_for(0, 4, [](std::size_t) { FAIL("must not run"); });
  std::vector<std::atomic<int>> hits(2);
  parallel_for(hits.size(), 16, [&](std::size_t i) { hits[i]++; });
  CHECK(hits[0].load() == 1);
  CHECK(hits[1].load() == 1);
}
