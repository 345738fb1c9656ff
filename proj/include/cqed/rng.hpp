#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace cqed {

// Counter-based deterministic random stream (SplitMix64). The state is just
// (seed, counter); the k-th output is a fixed avalanche mix of
// seed + k * gamma, so identical seeds give identical sequences on every
// platform. Sub-streams for parallel trajectories are derived from
// (seed, stream index) and are independent of how many streams exist.
class RngStream {
  public:
    static constexpr const char* kAlgorithm = "splitmix64-v1";
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    explicit RngStream(std::uint64_t seed) : seed_(seed), counter_(0) {}

    // Documented splitting rule: child seed = mix64(mix64(seed) + gamma * (index + 1)).
    static RngStream substream(std::uint64_t seed, std::uint64_t index) {
        return RngStream(mix64(mix64(seed) + kGamma * (index + 1)));
    }

    RngStream substream(std::uint64_t index) const { return substream(seed_, index); }

    std::uint64_t next_u64() {
        counter_ += 1;
        return mix64(seed_ + counter_ * kGamma);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Exponential waiting time; rate 0 means the event never fires.
    double exponential(double rate) {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log1p(-uniform()) / rate;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace cqed
