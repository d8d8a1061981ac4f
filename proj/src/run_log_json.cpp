#include <json.hpp>

#include "atrc/engine.hpp"

namespace atrc {

using nlohmann::json;

namespace {

json cell(CellCoord c) { return json::array({c.x, c.y}); }
CellCoord cell_from(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

json counts(const PacketCounts& c) {
    json j = json::array();
    for (auto v : c) j.push_back(v);
    return j;
}

PacketCounts counts_from(const json& j) {
    PacketCounts c{};
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = j.at(i).get<long long>();
    return c;
}

}  // namespace

std::string to_json(const RunLog& log) {
    json j;
    j["mode"] = static_cast<int>(log.mode);
    j["robots"] = log.robots;
    j["mines"] = log.mines;
    j["width"] = log.width;
    j["height"] = log.height;
    j["seed"] = log.seed;
    j["r_min"] = log.r_min;

    json moves = json::array();
    for (const auto& m : log.moves) moves.push_back({m.step, m.robot, cell(m.from), cell(m.to)});
    j["moves"] = std::move(moves);

    json deposits = json::array();
    for (const auto& d : log.deposits) deposits.push_back({d.step, d.robot, static_cast<int>(d.kind), cell(d.center)});
    j["deposits"] = std::move(deposits);

    json detections = json::array();
    for (const auto& d : log.detections) detections.push_back({d.step, d.robot, d.mine});
    j["detections"] = std::move(detections);

    json states = json::array();
    for (const auto& s : log.state_changes) {
        states.push_back({s.step, s.robot, static_cast<int>(s.from), static_cast<int>(s.to)});
    }
    j["state_changes"] = std::move(states);

    json packets = json::array();
    for (const auto& p : log.packets) {
        packets.push_back({p.step, static_cast<int>(p.kind), p.sender, p.receiver, p.coordinator, p.task_id, p.fant_id});
    }
    j["packets"] = std::move(packets);

    json tasks = json::array();
    for (const auto& t : log.tasks) {
        json recruits = json::array();
        for (const auto& r : t.recruits) recruits.push_back({r.robot, r.start, r.end});
        tasks.push_back({{"coordinator", t.task.coordinator},
                         {"task_id", t.task.task_id},
                         {"mine", t.mine},
                         {"t_start", t.t_start},
                         {"t_end", t.t_end},
                         {"completed", t.completed},
                         {"recruits", std::move(recruits)},
                         {"team", t.team},
                         {"packets", counts(t.packets)}});
    }
    j["tasks"] = std::move(tasks);

    json outcomes = json::array();
    for (const auto& m : log.mine_outcomes) {
        outcomes.push_back({{"mine", m.mine}, {"location", cell(m.location)},
                            {"status", static_cast<int>(m.status)}, {"team", m.team}});
    }
    j["mine_outcomes"] = std::move(outcomes);

    j["total_steps"] = log.total_steps;
    j["complete"] = log.complete;
    j["visit_counts"] = log.visit_counts;
    json obstacles = json::array();
    for (const auto& c : log.obstacles) obstacles.push_back(cell(c));
    j["obstacles"] = std::move(obstacles);
    j["distinct_cells"] = log.distinct_cells;
    j["transmissions"] = counts(log.transmissions);
    j["coverage"] = log.coverage;
    return j.dump();
}

RunLog run_log_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunLog log;
    log.mode = static_cast<Mode>(j.at("mode").get<int>());
    log.robots = j.at("robots").get<int>();
    log.mines = j.at("mines").get<int>();
    log.width = j.at("width").get<int>();
    log.height = j.at("height").get<int>();
    log.seed = j.at("seed").get<std::uint64_t>();
    log.r_min = j.at("r_min").get<int>();

    for (const auto& m : j.at("moves")) {
        log.moves.push_back({m.at(0).get<Step>(), m.at(1).get<RobotId>(), cell_from(m.at(2)), cell_from(m.at(3))});
    }
    for (const auto& d : j.at("deposits")) {
        log.deposits.push_back({d.at(0).get<Step>(), d.at(1).get<RobotId>(),
                                static_cast<PheromoneKind>(d.at(2).get<int>()), cell_from(d.at(3))});
    }
    for (const auto& d : j.at("detections")) {
        log.detections.push_back({d.at(0).get<Step>(), d.at(1).get<RobotId>(), d.at(2).get<MineId>()});
    }
    for (const auto& s : j.at("state_changes")) {
        log.state_changes.push_back({s.at(0).get<Step>(), s.at(1).get<RobotId>(),
                                     static_cast<RobotState>(s.at(2).get<int>()),
                                     static_cast<RobotState>(s.at(3).get<int>())});
    }
    for (const auto& p : j.at("packets")) {
        log.packets.push_back({p.at(0).get<Step>(), static_cast<PacketKind>(p.at(1).get<int>()),
                               p.at(2).get<RobotId>(), p.at(3).get<RobotId>(), p.at(4).get<RobotId>(),
                               p.at(5).get<int>(), p.at(6).get<int>()});
    }
    for (const auto& t : j.at("tasks")) {
        TaskRecord rec;
        rec.task = {t.at("coordinator").get<RobotId>(), t.at("task_id").get<int>()};
        rec.mine = t.at("mine").get<MineId>();
        rec.t_start = t.at("t_start").get<Step>();
        rec.t_end = t.at("t_end").get<Step>();
        rec.completed = t.at("completed").get<bool>();
        for (const auto& r : t.at("recruits")) {
            rec.recruits.push_back({r.at(0).get<RobotId>(), r.at(1).get<Step>(), r.at(2).get<Step>()});
        }
        rec.team = t.at("team").get<std::vector<RobotId>>();
        rec.packets = counts_from(t.at("packets"));
        log.tasks.push_back(std::move(rec));
    }
    for (const auto& m : j.at("mine_outcomes")) {
        MineOutcome o;
        o.mine = m.at("mine").get<MineId>();
        o.location = cell_from(m.at("location"));
        o.status = static_cast<MineStatus>(m.at("status").get<int>());
        o.team = m.at("team").get<std::vector<RobotId>>();
        log.mine_outcomes.push_back(std::move(o));
    }
    log.total_steps = j.at("total_steps").get<Step>();
    log.complete = j.at("complete").get<bool>();
    log.visit_counts = j.at("visit_counts").get<std::vector<int>>();
    for (const auto& c : j.at("obstacles")) log.obstacles.push_back(cell_from(c));
    log.distinct_cells = j.at("distinct_cells").get<std::vector<long long>>();
    log.transmissions = counts_from(j.at("transmissions"));
    log.coverage = j.at("coverage").get<double>();
    return log;
}

}  // namespace atrc
