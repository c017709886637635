#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <span>

namespace dysonsim {

// Worker count from DYSONSIM_WORKERS, falling back to the hardware
// concurrency (at least 1).
std::size_t default_worker_count();

// Runs body(begin, end) over contiguous chunks of [0, n) on up to `workers`
// threads. The first exception thrown by any chunk is rethrown.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t, std::size_t)>& body);

// Pairwise summation in index order; the result depends only on the values,
// not on how they were produced.
double pairwise_sum(std::span<const double> values);

} // namespace dysonsim
