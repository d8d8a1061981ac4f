#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "atrc/world.hpp"

using namespace atrc;

TEST_SUITE("world") {
    TEST_CASE("neighbours of interior, corner and walled cells") {
        GridWorld w(30, 30);
        CHECK(w.neighbors({10, 10}).size() == 8);
        CHECK(w.neighbors({0, 0}).size() == 3);

        GridWorld walled(5, 5);
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx || dy) walled.add_obstacle({2 + dx, 2 + dy});
            }
        }
        CHECK(walled.neighbors({2, 2}).empty());
    }

    TEST_CASE("occupied cells are not neighbours") {
        GridWorld w(5, 5);
        w.place_robot(0, {1, 1});
        w.place_robot(1, {2, 2});
        const auto n = w.neighbors({1, 1});
        CHECK(n.size() == 7);
        CHECK(std::find(n.begin(), n.end(), CellCoord{2, 2}) == n.end());
    }

    TEST_CASE("detecting mines") {
        GridWorld w(30, 30);
        for (CellCoord c : {CellCoord{0, 0}, CellCoord{7, 8}, CellCoord{20, 6}}) w.add_mine(c);
        const auto found = w.detect_mine({7, 8});
        REQUIRE(found);
        CHECK(*found == 1);
        CHECK(w.mine(1).status == MineStatus::Detected);
        CHECK_FALSE(w.detect_mine({3, 3}));
        // A second robot on the same cell finds nothing new.
        CHECK_FALSE(w.detect_mine({7, 8}));
        CHECK(w.mine(1).status == MineStatus::Detected);
    }

    TEST_CASE("mine status only moves forward") {
        GridWorld w(3, 3);
        w.add_mine({1, 1});
        w.advance_mine(0, MineStatus::Detected);
        w.advance_mine(0, MineStatus::Disarming);
        CHECK_THROWS_AS(w.advance_mine(0, MineStatus::Detected), std::logic_error);
        w.advance_mine(0, MineStatus::Disarmed);
        CHECK(w.all_mines_disarmed());
    }

    TEST_CASE("visits and coverage") {
        GridWorld w(4, 4);
        w.add_obstacle({3, 3});
        w.mark_visited({1, 1}, 0);
        CHECK(w.visits({1, 1}) == 1);
        w.mark_visited({1, 1}, 0);
        CHECK(w.visits({1, 1}) == 2);
        CHECK_THROWS_AS(w.mark_visited({1, 1}, 1), std::logic_error);
        CHECK(w.coverage() == doctest::Approx(1.0 / 15.0));
        for (int y = 0; y < 4; ++y) {
            for (int x = 0; x < 4; ++x) {
                if (!w.is_obstacle({x, y})) w.mark_visited({x, y}, 0);
            }
        }
        CHECK(w.coverage() == 1.0);
    }

    TEST_CASE("moves are single steps into free cells") {
        GridWorld w(5, 5);
        w.add_obstacle({2, 1});
        w.place_robot(0, {1, 1});
        CHECK_THROWS(w.move_robot(0, {1, 1}, {3, 1}));
        CHECK_THROWS(w.move_robot(0, {1, 1}, {2, 1}));
        w.move_robot(0, {1, 1}, {2, 2});
        CHECK(w.occupant({2, 2}) == 0);
        CHECK(w.occupant({1, 1}) == kNoRobot);
    }
}
