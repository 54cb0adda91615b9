#pragma once

#include <cstdint>

namespace vmlab {

/// splitmix64 stream. The 64-bit state is the entire generator, so a stream
/// can be resumed anywhere from a recorded (state, draws) pair.
class Generator {
  public:
    explicit Generator(std::uint64_t seed, std::uint64_t draws = 0) noexcept
        : state_(seed), draws_(draws) {}

    std::uint64_t next_u64() noexcept {
        ++draws_;
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state() const noexcept { return state_; }

    /// Number of next_u64 calls since the seed.
    std::uint64_t draws() const noexcept { return draws_; }

    friend bool operator==(const Generator&, const Generator&) = default;

  private:
    std::uint64_t state_;
    std::uint64_t draws_;
};

/// Unbiased integer in [lo, hi] by modulo rejection: with n = hi - lo + 1,
/// draws z until z < floor(2^64 / n) * n and returns lo + z mod n.
/// Throws LabError(InvalidArgument) if lo > hi.
std::int64_t uniform_ticks(Generator& gen, std::int64_t lo, std::int64_t hi);

}  // namespace vmlab
