#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dysonsim/parallel.hpp"

using namespace dysonsim;

TEST(ParallelFor, CoversEveryIndexOnce) {
    for (std::size_t workers : {1u, 2u, 3u, 8u}) {
        std::vector<std::atomic<int>> hits(1001);
        parallel_for(hits.size(), workers, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) hits[i].fetch_add(1);
        });
        for (const auto& h : hits) ASSERT_EQ(h.load(), 1);
    }
    parallel_for(0, 4, [](std::size_t, std::size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsWorkerException) {
    EXPECT_THROW(parallel_for(100, 4,
                              [](std::size_t b, std::size_t) {
                                  if (b == 0) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}

TEST(PairwiseSum, MatchesAndIsOrderFixed) {
    std::vector<double> v(12345);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + i);
    const double s = pairwise_sum(v);
    EXPECT_NEAR(s, std::accumulate(v.begin(), v.end(), 0.0), 1e-12);
    EXPECT_EQ(s, pairwise_sum(v));
    EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(Workers, EnvironmentOverride) {
    setenv("DYSONSIM_WORKERS", "3", 1);
    EXPECT_EQ(default_worker_count(), 3u);
    unsetenv("DYSONSIM_WORKERS");
    EXPECT_GE(default_worker_count(), 1u);
}
