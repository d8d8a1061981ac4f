#include "atrc/rng.hpp"

namespace atrc {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t RngStream::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::uniform_index(std::size_t n) {
    // Rejection sampling keeps the draw unbiased for any n.
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return static_cast<std::size_t>(v % bound);
}

RngStream SeededRng::stream(RngConsumer consumer, RobotId robot, Step step) const {
    std::uint64_t key = mix64(seed_ ^ 0x6a09e667f3bcc909ULL);
    key = mix64(key ^ (static_cast<std::uint64_t>(consumer) * 0x9e3779b97f4a7c15ULL));
    key = mix64(key ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(robot) + 0x100000000LL));
    key = mix64(key ^ static_cast<std::uint64_t>(step));
    return RngStream(key);
}

}  // namespace atrc
