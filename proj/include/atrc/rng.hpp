#pragma once

#include <cstddef>
#include <cstdint>

#include "atrc/types.hpp"

namespace atrc {

// Consumers of randomness. Each (consumer, robot, step) triple owns an
// independent substream, so adding draws in one consumer never shifts the
// draws seen by another.
enum class RngConsumer : std::uint32_t {
    PheromoneNoise = 1,
    MoveTieBreak = 2,
    ReplyDecision = 3,
    PacketLoss = 4,
    Placement = 5,
    StochasticMove = 6,
};

// SplitMix64-style generator over a 64-bit counter. Cheap to construct, so
// streams are created on demand and discarded.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64();
    // Uniform in [0, 1) with 53 bits of resolution.
    double uniform01();
    // Uniform integer in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n);
    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t state_;
};

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    RngStream stream(RngConsumer consumer, RobotId robot, Step step) const;

private:
    std::uint64_t seed_;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace atrc
