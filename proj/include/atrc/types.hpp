#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <string_view>

namespace atrc {

using RobotId = int;
using MineId = int;
using Step = std::int64_t;

inline constexpr RobotId kNoRobot = -1;

struct CellCoord {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(const CellCoord&, const CellCoord&) = default;
    // Row-major order: y first, then x.
    friend constexpr std::strong_ordering operator<=>(const CellCoord& a, const CellCoord& b) {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
};

double euclidean(CellCoord a, CellCoord b);
double squared_distance(CellCoord a, CellCoord b);

inline int chebyshev(CellCoord a, CellCoord b) {
    const int dx = std::abs(a.x - b.x);
    const int dy = std::abs(a.y - b.y);
    return dx > dy ? dx : dy;
}

std::string to_string(CellCoord c);

// Shortest text that reads back to the same double.
std::string format_double(double v);

enum class Mode { ExplorationOnly, Stigmergy, Protocol };

std::string_view to_string(Mode m);
// Accepts "oe", "ers", "erp" (case-insensitive).
bool parse_mode(std::string_view text, Mode& out);

}  // namespace atrc

template <>
struct std::hash<atrc::CellCoord> {
    std::size_t operator()(const atrc::CellCoord& c) const noexcept {
        return std::hash<std::int64_t>{}((static_cast<std::int64_t>(c.x) << 32) ^ static_cast<std::uint32_t>(c.y));
    }
};
