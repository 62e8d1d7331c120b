#pragma once
#include <cstddef>
#include <functional>

namespace cusp::parallel {

// Worker count: explicit override, else CUSP_TORSION_THREADS, else hardware concurrency.
int thread_count();
void set_thread_count(int n);  // n <= 0 restores the default

// Runs body(i) for i in [0, n). Each index is handled exactly once; exceptions are rethrown
// (the one with the lowest index wins) after all workers stop.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cusp::parallel
