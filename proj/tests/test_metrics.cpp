#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "atrc/engine.hpp"
#include "atrc/metrics.hpp"

using namespace atrc;

namespace {

MetricsRecord with_steps(Step steps) {
    MetricsRecord r;
    r.total_steps = steps;
    return r;
}

}  // namespace

TEST_SUITE("metrics") {
    TEST_CASE("exploration-only runs have no coordination term") {
        SimConfig c;
        c.grid.width = c.grid.height = 10;
        const auto m = evaluate(run(c));
        CHECK(m.coordination_term == 0.0);
        CHECK(m.objective == m.exploration_term);
        CHECK(m.overhead_total == 0);
    }

    TEST_CASE("hand-built log: three recruits of 12 steps each") {
        RunLog log;
        log.width = log.height = 2;
        log.r_min = 4;
        log.distinct_cells = {3, 2, 1, 1};
        log.visit_counts = {1, 1, 1, 1};
        TaskRecord t;
        t.completed = true;
        t.recruits = {{1, 10, 22}, {2, 11, 23}, {3, 30, 42}};
        log.tasks.push_back(t);
        TaskRecord abandoned;
        abandoned.recruits = {{1, 0, 5}};
        log.tasks.push_back(abandoned);
        const auto m = evaluate(log);
        CHECK(m.coordination_term == 36.0);
        CHECK(m.exploration_term == 7.0);
        CHECK(m.objective == 43.0);
    }

    TEST_CASE("exploration term counts distinct robot-cell pairs") {
        SimConfig c;
        c.grid.width = c.grid.height = 8;
        c.robots.count = 3;
        const auto log = run(c);
        std::vector<std::set<CellCoord>> seen(3);
        Simulation sim(c);
        for (const auto& r : sim.robots()) seen[static_cast<std::size_t>(r.id)].insert(r.position);
        for (const auto& mv : log.moves) seen[static_cast<std::size_t>(mv.robot)].insert(mv.to);
        double pairs = 0.0;
        for (const auto& s : seen) pairs += static_cast<double>(s.size());
        CHECK(evaluate(log).exploration_term == pairs);
        long long visits = 0;
        for (int v : log.visit_counts) visits += v;
        CHECK(static_cast<double>(visits) >= pairs);
    }

    TEST_CASE("complete ERP runs pass the audits and overhead matches the medium") {
        SimConfig c;
        c.mode = Mode::Protocol;
        c.grid.width = c.grid.height = 20;
        c.grid.random_mines = 2;
        c.robots.count = 12;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            c.seed = seed;
            Simulation sim(c);
            while (sim.step()) {
            }
            const auto log = sim.finish();
            const auto m = evaluate(log);
            REQUIRE(log.complete);
            CHECK(m.audit.passed());
            CHECK(m.audit.unvisited_cells == 0);
            CHECK(m.mines_disarmed == 2);
            long long sum = 0;
            for (auto k : kControlKinds) {
                CHECK(m.overhead[kind_index(k)] == sim.medium().transmissions(k));
                sum += m.overhead[kind_index(k)];
            }
            CHECK(m.overhead_total == sum);
            CHECK(m.overhead[kind_index(PacketKind::Hello)] == 0);
            CHECK(sim.medium().transmissions(PacketKind::Hello) > 0);
        }
    }

    TEST_CASE("audit flags wrong team sizes and unvisited cells") {
        RunLog log;
        log.width = log.height = 2;
        log.r_min = 4;
        log.visit_counts = {1, 0, 1, 1};
        log.mine_outcomes = {{0, {0, 0}, MineStatus::Disarmed, {1, 2, 3}}};
        const auto m = evaluate(log);
        CHECK_FALSE(m.audit.full_coverage);
        CHECK(m.audit.unvisited_cells == 1);
        CHECK(m.audit.wrong_team_size == std::vector<MineId>{0});
        CHECK_FALSE(m.audit.passed());
    }

    TEST_CASE("aggregate examples") {
        std::vector<MetricsRecord> same(30, with_steps(100));
        const auto s = aggregate(same);
        CHECK(s.at("totalSteps").mean == 100.0);
        CHECK(s.at("totalSteps").stddev == 0.0);
        CHECK(s.at("totalSteps").ci95 == 0.0);

        const std::vector<MetricsRecord> two = {with_steps(10), with_steps(20)};
        CHECK(aggregate(two).at("totalSteps").mean == 15.0);

        const std::vector<double> one = {1.0};
        CHECK_THROWS_AS(summarize(one), std::invalid_argument);
    }

    TEST_CASE("confidence interval shrinks like 1/sqrt(n)") {
        auto data = [](std::size_t n) {
            std::vector<double> v;
            for (std::size_t i = 0; i < n; ++i) v.push_back(i % 2 ? 1.0 : -1.0);
            return v;
        };
        const auto a = summarize(data(100));
        const auto b = summarize(data(400));
        CHECK(b.ci95 / a.ci95 == doctest::Approx(0.5).epsilon(0.02));
        // Known value: n = 2 with {0, 2}: std sqrt(2), t(0.975, 1) = 12.706.
        const std::vector<double> pair = {0.0, 2.0};
        CHECK(summarize(pair).ci95 == doctest::Approx(12.7062 * std::sqrt(2.0) / std::sqrt(2.0)).epsilon(1e-4));
    }

    TEST_CASE("CSV rows line up with the header") {
        SimConfig c;
        c.grid.width = c.grid.height = 6;
        const auto row = csv_row(evaluate(run(c)));
        const auto header = csv_header();
        CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
        PacketCounts counts{};
        counts[kind_index(PacketKind::RtFant)] = 3;
        counts[kind_index(PacketKind::Lp)] = 1;
        CHECK(overhead_by_kind(counts) == "rtfant:3;rtbant:0;rfant:0;rbant:0;lp:1");
    }
}
