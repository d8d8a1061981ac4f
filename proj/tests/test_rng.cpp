#include <doctest.h>

#include <cmath>
#include <set>

#include "atrc/rng.hpp"

using namespace atrc;

TEST_SUITE("rng") {
    TEST_CASE("same tuple, same draws") {
        const SeededRng a(42), b(42);
        auto s = a.stream(RngConsumer::PheromoneNoise, 3, 17);
        auto t = b.stream(RngConsumer::PheromoneNoise, 3, 17);
        for (int i = 0; i < 100; ++i) CHECK(s.next_u64() == t.next_u64());
    }

    TEST_CASE("tuples and seeds select different streams") {
        const SeededRng rng(42);
        std::set<std::uint64_t> firsts;
        for (auto c : {RngConsumer::PheromoneNoise, RngConsumer::MoveTieBreak, RngConsumer::ReplyDecision}) {
            for (RobotId r = 0; r < 5; ++r) {
                for (Step t = 0; t < 5; ++t) firsts.insert(rng.stream(c, r, t).next_u64());
            }
        }
        CHECK(firsts.size() == 75);
        CHECK(SeededRng(1).stream(RngConsumer::Placement, 0, 0).next_u64() !=
              SeededRng(2).stream(RngConsumer::Placement, 0, 0).next_u64());
    }

    TEST_CASE("streams of different robots are uncorrelated") {
        const SeededRng rng(7);
        auto a = rng.stream(RngConsumer::PheromoneNoise, 0, 1);
        auto b = rng.stream(RngConsumer::PheromoneNoise, 1, 1);
        const int n = 10000;
        double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
        for (int i = 0; i < n; ++i) {
            const double x = a.uniform01(), y = b.uniform01();
            sa += x;
            sb += y;
            saa += x * x;
            sbb += y * y;
            sab += x * y;
        }
        const double cov = sab / n - (sa / n) * (sb / n);
        const double r = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
        CHECK(std::abs(r) < 0.05);
    }

    TEST_CASE("uniform draws lie in [0, 1) with the right mean") {
        RngStream s(123);
        double sum = 0.0;
        for (int i = 0; i < 100000; ++i) {
            const double e = s.uniform01();
            CHECK_UNARY(e >= 0.0);
            CHECK_UNARY(e < 1.0);
            sum += e;
        }
        CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
    }

    TEST_CASE("uniform_index covers its range") {
        RngStream s(5);
        std::set<std::size_t> seen;
        for (int i = 0; i < 1000; ++i) {
            const auto k = s.uniform_index(7);
            CHECK(k < 7);
            seen.insert(k);
        }
        CHECK(seen.size() == 7);
    }
}
