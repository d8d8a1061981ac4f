#include <doctest.h>

#include <set>
#include <stdexcept>

#include "atrc/engine.hpp"
#include "atrc/metrics.hpp"

using namespace atrc;

TEST_SUITE("engine") {
    TEST_CASE("one robot on a 1x1 grid finishes at step 1") {
        SimConfig c;
        c.grid.width = c.grid.height = 1;
        c.robots.count = 1;
        const auto log = run(c);
        CHECK(log.complete);
        CHECK(log.total_steps == 1);
        CHECK(log.coverage == 1.0);
    }

    TEST_CASE("ERP run disarms its mine and is reproducible") {
        SimConfig c;
        c.mode = Mode::Protocol;
        c.grid.width = c.grid.height = 10;
        c.grid.random_mines = 1;
        c.robots.count = 4;
        c.seed = 3;
        const auto a = run(c);
        CHECK(a.complete);
        REQUIRE(a.mine_outcomes.size() == 1);
        CHECK(a.mine_outcomes[0].status == MineStatus::Disarmed);
        CHECK(a.mine_outcomes[0].team.size() == 4);
        CHECK(to_json(a) == to_json(run(c)));
    }

    TEST_CASE("too few robots for a team is rejected") {
        SimConfig c;
        c.mode = Mode::Protocol;
        c.robots.count = 3;
        c.grid.random_mines = 1;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        CHECK_THROWS_AS(run(c), std::invalid_argument);
        c.mode = Mode::ExplorationOnly;
        CHECK_NOTHROW(c.validate());
    }

    TEST_CASE("other invalid configs") {
        SimConfig c;
        c.grid.width = 0;
        CHECK_THROWS(c.validate());
        c = {};
        c.robots.starts = {{0, 0}, {0, 0}, {1, 1}, {2, 2}};
        CHECK_THROWS(c.validate());
        c = {};
        c.grid.obstacles = {{40, 1}};
        CHECK_THROWS(c.validate());
        c = {};
        c.team.cooldown = -1;
        CHECK_THROWS(c.validate());
    }

    TEST_CASE("runs stop at max_steps") {
        SimConfig c;
        c.grid.width = c.grid.height = 30;
        c.robots.count = 1;
        c.max_steps = 50;
        const auto log = run(c);
        CHECK_FALSE(log.complete);
        CHECK(log.total_steps == 50);
    }

    TEST_CASE("random placement uses distinct free cells") {
        SimConfig c;
        c.grid.width = c.grid.height = 6;
        c.grid.obstacles = {{1, 1}, {2, 2}, {3, 3}};
        c.grid.random_mines = 5;
        c.robots.count = 20;
        c.mode = Mode::Protocol;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            c.seed = seed;
            Simulation sim(c);
            std::set<CellCoord> used;
            for (const auto& m : sim.world().mines()) {
                CHECK_FALSE(sim.world().is_obstacle(m.location));
                used.insert(m.location);
            }
            for (const auto& r : sim.robots()) {
                CHECK_FALSE(sim.world().is_obstacle(r.position));
                used.insert(r.position);
            }
            CHECK(used.size() == 25);
        }
    }

    TEST_CASE("changing the seed changes the run") {
        SimConfig c;
        c.grid.width = c.grid.height = 12;
        c.seed = 1;
        const auto a = to_json(run(c));
        c.seed = 2;
        CHECK(a != to_json(run(c)));
    }

    TEST_CASE("run log JSON round trip keeps the objective") {
        SimConfig c;
        c.mode = Mode::Stigmergy;
        c.grid.width = c.grid.height = 12;
        c.grid.random_mines = 2;
        c.robots.count = 6;
        const auto log = run(c);
        const auto text = to_json(log);
        const auto back = run_log_from_json(text);
        CHECK(to_json(back) == text);
        CHECK(evaluate(back).objective == evaluate(log).objective);
    }

    TEST_CASE("task records are consistent") {
        SimConfig c;
        c.mode = Mode::Protocol;
        c.grid.width = c.grid.height = 20;
        c.grid.random_mines = 2;
        c.robots.count = 12;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            c.seed = seed;
            const auto log = run(c);
            int completed = 0;
            long long packets = 0;
            for (const auto& t : log.tasks) {
                for (auto n : t.packets) packets += n;
                if (!t.completed) continue;
                ++completed;
                CHECK(t.t_end >= t.t_start);
                CHECK(t.recruits.size() == 3);
                CHECK(t.team.size() == 4);
                for (const auto& r : t.recruits) CHECK(r.end >= r.start);
            }
            CHECK(completed == 2);
            long long control = 0;
            for (auto k : kControlKinds) control += log.transmissions[kind_index(k)];
            CHECK(packets == control);
        }
    }

    TEST_CASE("stepping matches run") {
        SimConfig c;
        c.mode = Mode::Protocol;
        c.grid.width = c.grid.height = 12;
        c.grid.random_mines = 1;
        c.robots.count = 6;
        Simulation sim(c);
        while (sim.step()) {
        }
        CHECK(to_json(sim.finish()) == to_json(run(c)));
        CHECK_FALSE(sim.step());
    }
}
