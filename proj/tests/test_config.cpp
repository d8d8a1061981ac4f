#include <doctest.h>

#include <sstream>

#include "atrc/config.hpp"

using namespace atrc;

namespace {

SimConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("sections and keys map onto the config") {
        const auto c = parse(R"(
# comment
[grid]
width = 12
height = 9
obstacles = 1,1; 2,2

[mines]
cells = 5,5
count = 2

[robots]
count = 6

[run]
mode = ERP
seed = 99
max_steps = 1234
static_foragers = yes

[pheromone]
rho = 0.4
noise_mode = per_deposit

[network]
transmission_radius = 7.5

[team]
cooldown = 3
)");
        CHECK(c.grid.width == 12);
        CHECK(c.grid.height == 9);
        CHECK(c.grid.obstacles == std::vector<CellCoord>{{1, 1}, {2, 2}});
        CHECK(c.grid.mines == std::vector<CellCoord>{{5, 5}});
        CHECK(c.grid.random_mines == 2);
        CHECK(c.robots.count == 6);
        CHECK(c.mode == Mode::Protocol);
        CHECK(c.seed == 99);
        CHECK(c.max_steps == 1234);
        CHECK(c.static_foragers);
        CHECK(c.pheromone.rho == 0.4);
        CHECK(c.pheromone.noise_mode == NoiseMode::PerDeposit);
        CHECK(c.net.transmission_radius == 7.5);
        CHECK(c.team.cooldown == 3);
        CHECK(c.pheromone.a1 == 0.5);  // untouched default
    }

    TEST_CASE("errors") {
        CHECK_THROWS_AS(parse("[grid]\nwidht = 3\n"), ConfigError);
        CHECK_THROWS_AS(parse("[colour]\nred = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse("[grid]\nwidth = ten\n"), ConfigError);
        CHECK_THROWS_AS(parse("[run]\nmode = fast\n"), ConfigError);
        CHECK_THROWS_AS(parse("[mines]\ncells = 1;2\n"), ConfigError);
        CHECK_THROWS_AS(parse("[robots]\ncount = 3\n[run]\nmode = erp\n"), ConfigError);
        CHECK_THROWS_AS(load_config("/nonexistent/file.ini"), ConfigError);
    }

    TEST_CASE("to_ini round trip") {
        SimConfig c;
        c.mode = Mode::Stigmergy;
        c.grid.width = 17;
        c.grid.obstacles = {{3, 4}};
        c.grid.mines = {{8, 8}, {9, 1}};
        c.robots.count = 5;
        c.robots.starts = {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}};
        c.pheromone.a2 = 1000.0;
        c.pheromone.rho = 0.1;
        c.protocol.request_hops = 2;
        c.policy.stochastic = true;
        c.exploration = ExplorationPolicy::RandomWalk;
        const auto text = to_ini(c);
        CHECK(to_ini(parse(text)) == text);
        CHECK(text.find("rho = 0.1\n") != std::string::npos);
    }

    TEST_CASE("cell lists") {
        CHECK(parse_cells("").empty());
        CHECK(parse_cells(" 1, 2 ;3,4; ") == std::vector<CellCoord>{{1, 2}, {3, 4}});
        CHECK(format_cells({{1, 2}, {3, 4}}) == "1,2; 3,4");
    }
}
