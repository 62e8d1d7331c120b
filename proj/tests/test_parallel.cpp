#include "cusp/parallel.hpp"

#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

using namespace cusp;

TEST_SUITE("parallel") {
  TEST_CASE("every index runs once") {
    for (int threads : {1, 3}) {
      parallel::set_thread_count(threads);
      std::vector<std::atomic<int>> hits(257);
      parallel::for_each_index(hits.size(), [&](std::size_t i) { hits[i]++; });
      for (const auto& h : hits) CHECK(h.load() == 1);
    }
    parallel::set_thread_count(0);
  }

  TEST_CASE("the lowest failing index is reported") {
    parallel::set_thread_count(4);
    try {
      parallel::for_each_index(100, [](std::size_t i) {
        if (i == 17 || i == 60) throw std::runtime_error("index " + std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "index 17");
    }
    parallel::set_thread_count(0);
    CHECK(parallel::thread_count() >= 1);
  }
}
