#include "atrc/world.hpp"

#include <stdexcept>

namespace atrc {

std::string_view to_string(MineStatus s) {
    switch (s) {
        case MineStatus::Hidden: return "hidden";
        case MineStatus::Detected: return "detected";
        case MineStatus::Disarming: return "disarming";
        case MineStatus::Disarmed: return "disarmed";
    }
    return "?";
}

GridWorld::GridWorld(int width, int height)
    : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("grid dimensions must be positive");
    }
    obstacle_.assign(cell_count(), false);
    occupancy_.assign(cell_count(), kNoRobot);
    visited_.assign(cell_count(), 0);
}

void GridWorld::add_obstacle(CellCoord c) {
    if (!in_bounds(c)) throw std::invalid_argument("obstacle out of bounds: " + to_string(c));
    if (mine_at(c)) throw std::invalid_argument("obstacle on mine cell: " + to_string(c));
    if (occupant(c) != kNoRobot) throw std::invalid_argument("obstacle on robot cell: " + to_string(c));
    if (!obstacle_[index(c)]) {
        obstacle_[index(c)] = true;
        ++obstacle_count_;
    }
}

MineId GridWorld::add_mine(CellCoord c) {
    if (!in_bounds(c)) throw std::invalid_argument("mine out of bounds: " + to_string(c));
    if (is_obstacle(c)) throw std::invalid_argument("mine on obstacle: " + to_string(c));
    if (mine_at(c)) throw std::invalid_argument("duplicate mine at " + to_string(c));
    Mine m;
    m.id = static_cast<MineId>(mines_.size());
    m.location = c;
    mines_.push_back(m);
    return m.id;
}

std::optional<MineId> GridWorld::mine_at(CellCoord c) const {
    for (const auto& m : mines_) {
        if (m.location == c) return m.id;
    }
    return std::nullopt;
}

void GridWorld::advance_mine(MineId id, MineStatus next) {
    Mine& m = mine(id);
    if (static_cast<int>(next) < static_cast<int>(m.status)) {
        throw std::logic_error("mine status may only move forward");
    }
    m.status = next;
}

bool GridWorld::all_mines_disarmed() const {
    for (const auto& m : mines_) {
        if (m.status != MineStatus::Disarmed) return false;
    }
    return true;
}

void GridWorld::place_robot(RobotId r, CellCoord c) {
    if (!in_bounds(c)) throw std::invalid_argument("robot start out of bounds: " + to_string(c));
    if (is_obstacle(c)) throw std::invalid_argument("robot start on obstacle: " + to_string(c));
    if (occupant(c) != kNoRobot) throw std::invalid_argument("two robots share start cell " + to_string(c));
    occupancy_[index(c)] = r;
}

void GridWorld::move_robot(RobotId r, CellCoord from, CellCoord to) {
    if (occupant(from) != r) throw std::logic_error("robot is not at its recorded cell");
    if (chebyshev(from, to) > 1) throw std::logic_error("move longer than one cell");
    if (from == to) return;
    if (!is_free(to)) throw std::logic_error("move into blocked cell " + to_string(to));
    occupancy_[index(from)] = kNoRobot;
    occupancy_[index(to)] = r;
}

std::vector<CellCoord> GridWorld::neighbors(CellCoord c) const {
    std::vector<CellCoord> out;
    out.reserve(8);
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const CellCoord n{c.x + dx, c.y + dy};
            if (in_bounds(n) && is_free(n)) out.push_back(n);
        }
    }
    return out;
}

std::optional<MineId> GridWorld::detect_mine(CellCoord c) {
    const auto id = mine_at(c);
    if (!id || mine(*id).status != MineStatus::Hidden) return std::nullopt;
    advance_mine(*id, MineStatus::Detected);
    return id;
}

void GridWorld::mark_visited(CellCoord c, RobotId r) {
    if (!in_bounds(c) || is_obstacle(c)) {
        throw std::logic_error("mark_visited on invalid cell " + to_string(c));
    }
    if (occupant(c) != kNoRobot && occupant(c) != r) {
        throw std::logic_error("mark_visited on a cell held by another robot");
    }
    auto& v = visited_[index(c)];
    if (v == 0) ++covered_;
    ++v;
    occupancy_[index(c)] = r;
}

double GridWorld::coverage() const {
    const std::size_t free_cells = cell_count() - obstacle_count_;
    if (free_cells == 0) return 1.0;
    return static_cast<double>(covered_) / static_cast<double>(free_cells);
}

}  // namespace atrc
