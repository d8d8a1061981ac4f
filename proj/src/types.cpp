#include "atrc/types.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>

namespace atrc {

double squared_distance(CellCoord a, CellCoord b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double euclidean(CellCoord a, CellCoord b) {
    return std::sqrt(squared_distance(a, b));
}

std::string to_string(CellCoord c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::ExplorationOnly: return "oe";
        case Mode::Stigmergy: return "ers";
        case Mode::Protocol: return "erp";
    }
    return "?";
}

bool parse_mode(std::string_view text, Mode& out) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "oe") { out = Mode::ExplorationOnly; return true; }
    if (lower == "ers") { out = Mode::Stigmergy; return true; }
    if (lower == "erp") { out = Mode::Protocol; return true; }
    return false;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace atrc
