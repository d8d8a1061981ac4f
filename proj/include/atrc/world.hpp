#pragma once

#include <optional>
#include <set>
#include <vector>

#include "atrc/types.hpp"

namespace atrc {

enum class MineStatus { Hidden, Detected, Disarming, Disarmed };

std::string_view to_string(MineStatus s);

struct Mine {
    MineId id = 0;
    CellCoord location;
    MineStatus status = MineStatus::Hidden;
    std::set<RobotId> assigned;
    // Robot currently coordinating this mine; kNoRobot when the mine is
    // hidden, abandoned, or disarmed.
    RobotId coordinator = kNoRobot;
};

// Dense m x n grid. Obstacles are static; robot occupancy and visit counts
// are updated by the engine only.
class GridWorld {
public:
    GridWorld(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t cell_count() const { return static_cast<std::size_t>(width_) * height_; }

    bool in_bounds(CellCoord c) const {
        return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
    }
    std::size_t index(CellCoord c) const { return static_cast<std::size_t>(c.y) * width_ + c.x; }
    CellCoord coord(std::size_t idx) const {
        return {static_cast<int>(idx % width_), static_cast<int>(idx / width_)};
    }

    void add_obstacle(CellCoord c);
    bool is_obstacle(CellCoord c) const { return obstacle_[index(c)]; }
    std::size_t obstacle_count() const { return obstacle_count_; }

    // Mines get sequential ids in insertion order.
    MineId add_mine(CellCoord c);
    const std::vector<Mine>& mines() const { return mines_; }
    Mine& mine(MineId id) { return mines_.at(static_cast<std::size_t>(id)); }
    const Mine& mine(MineId id) const { return mines_.at(static_cast<std::size_t>(id)); }
    std::optional<MineId> mine_at(CellCoord c) const;
    // Forward-only: Hidden -> Detected -> Disarming -> Disarmed.
    void advance_mine(MineId id, MineStatus next);
    bool all_mines_disarmed() const;

    RobotId occupant(CellCoord c) const { return occupancy_[index(c)]; }
    bool is_free(CellCoord c) const { return !is_obstacle(c) && occupant(c) == kNoRobot; }
    void place_robot(RobotId r, CellCoord c);
    void move_robot(RobotId r, CellCoord from, CellCoord to);

    // In-bounds 8-neighbours that are neither obstacles nor occupied, in
    // row-major order.
    std::vector<CellCoord> neighbors(CellCoord c) const;

    // Returns the Hidden mine at c (marking it Detected), or nothing.
    std::optional<MineId> detect_mine(CellCoord c);

    void mark_visited(CellCoord c, RobotId r);
    int visits(CellCoord c) const { return visited_[index(c)]; }
    const std::vector<int>& visit_counts() const { return visited_; }
    std::size_t covered_cells() const { return covered_; }
    // Fraction of non-obstacle cells visited at least once.
    double coverage() const;

private:
    int width_;
    int height_;
    std::vector<bool> obstacle_;
    std::size_t obstacle_count_ = 0;
    std::vector<Mine> mines_;
    std::vector<RobotId> occupancy_;
    std::vector<int> visited_;
    std::size_t covered_ = 0;
};

}  // namespace atrc
