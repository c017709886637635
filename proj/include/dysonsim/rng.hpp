#pragma once

#include <array>
#include <cstdint>

namespace dysonsim {

// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Counter-based random stream addressed by (seed, stream id, sample index).
// Any sample's stream can be regenerated independently on any thread, which
// makes parallel Monte Carlo results independent of the worker layout.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint32_t stream, std::uint64_t sample) noexcept
        : seed_(seed), stream_(stream), sample_(sample) {}

    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform integer in [0, n) by rejection.
    std::uint64_t uniform_index(std::uint64_t n);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint32_t stream() const noexcept { return stream_; }
    std::uint64_t sample() const noexcept { return sample_; }
    // Number of 64-bit words consumed so far.
    std::uint64_t draws() const noexcept { return draws_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint32_t stream_;
    std::uint64_t sample_;
    std::uint64_t block_ = 0;
    std::uint64_t draws_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

} // namespace dysonsim
