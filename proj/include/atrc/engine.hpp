#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atrc/agent.hpp"
#include "atrc/netsim.hpp"
#include "atrc/pheromone.hpp"
#include "atrc/policy.hpp"
#include "atrc/protocol.hpp"
#include "atrc/rng.hpp"
#include "atrc/world.hpp"

namespace atrc {

struct GridSpec {
    int width = 30;
    int height = 30;
    std::vector<CellCoord> obstacles;
    std::vector<CellCoord> mines;  // explicit mine cells
    int random_mines = 0;          // additional mines placed at random
};

struct RobotSpec {
    int count = 4;
    std::vector<CellCoord> starts;  // empty: random distinct free cells
};

struct StigmergyParams {
    // Attractive amounts below this are not perceived.
    double theta_threshold = 1e-3;
};

struct TeamParams {
    // Steps a coordinator with waiters goes without a new arrival before
    // releasing its partial team; 0 selects the arrival timeout.
    int patience = 0;
    // Steps a released robot neither follows theta nor takes over a
    // detected mine.
    int cooldown = 25;
};

struct SimConfig {
    GridSpec grid;
    RobotSpec robots;
    Mode mode = Mode::ExplorationOnly;
    ExplorationPolicy exploration = ExplorationPolicy::Pheromone;
    PheromoneParams pheromone;
    MoveScoreParams policy;
    NetParams net;
    ProtocolParams protocol;
    StigmergyParams stigmergy;
    TeamParams team;
    std::uint64_t seed = 1;
    Step max_steps = 50000;
    // Foragers hold their cell; used to pin a fixed network topology.
    bool static_foragers = false;

    // Throws std::invalid_argument describing the first violation.
    void validate() const;
    int mine_count() const { return static_cast<int>(grid.mines.size()) + grid.random_mines; }
    Step arrival_timeout() const;
    Step team_patience() const;
};

struct MoveEvent {
    Step step = 0;
    RobotId robot = kNoRobot;
    CellCoord from;
    CellCoord to;
};

struct StateEvent {
    Step step = 0;
    RobotId robot = kNoRobot;
    RobotState from = RobotState::Forager;
    RobotState to = RobotState::Forager;
};

struct DetectionEvent {
    Step step = 0;
    RobotId robot = kNoRobot;
    MineId mine = -1;
};

struct DepositEvent {
    Step step = 0;
    RobotId robot = kNoRobot;
    PheromoneKind kind = PheromoneKind::Repellent;
    CellCoord center;
};

// One recruited robot's trip: request received at `start`, mine reached at `end`.
struct CoordinationRecord {
    RobotId robot = kNoRobot;
    Step start = 0;
    Step end = 0;
};

struct TaskRecord {
    TaskKey task;
    MineId mine = -1;
    Step t_start = 0;
    Step t_end = -1;  // team complete; -1 when the task was abandoned or is unfinished
    bool completed = false;
    std::vector<CoordinationRecord> recruits;  // members of the final team only
    std::vector<RobotId> team;                 // coordinator + recruits
    PacketCounts packets{};
};

struct MineOutcome {
    MineId mine = -1;
    CellCoord location;
    MineStatus status = MineStatus::Hidden;
    std::vector<RobotId> team;  // robots assigned when disarming started
};

struct RunLog {
    Mode mode = Mode::ExplorationOnly;
    int robots = 0;
    int mines = 0;
    int width = 0;
    int height = 0;
    std::uint64_t seed = 0;
    int r_min = 0;

    std::vector<MoveEvent> moves;
    std::vector<DepositEvent> deposits;
    std::vector<DetectionEvent> detections;
    std::vector<StateEvent> state_changes;
    std::vector<PacketTraceRecord> packets;  // HELLO excluded

    std::vector<TaskRecord> tasks;
    std::vector<MineOutcome> mine_outcomes;
    Step total_steps = 0;
    bool complete = false;
    std::vector<int> visit_counts;          // row-major
    std::vector<CellCoord> obstacles;
    std::vector<long long> distinct_cells;  // per robot
    PacketCounts transmissions{};
    double coverage = 0.0;

    bool capped() const { return !complete; }
};

// Serialises the log as JSON; to_json(from_json(s)) == s.
std::string to_json(const RunLog& log);
RunLog run_log_from_json(const std::string& text);

struct RunOptions {
    // Per-step event lists (moves, deposits, state changes, packet trace).
    bool record_events = true;
    std::ostream* field_dump = nullptr;    // step,x,y,tau,theta
    std::ostream* packet_trace = nullptr;  // step,kind,sender,receiver,coordinator,taskId
    std::ostream* robot_trace = nullptr;   // step,id,x,y,state
};

// Step-by-step driver. run() wraps it for whole runs.
class Simulation {
public:
    explicit Simulation(SimConfig config, RunOptions options = {});

    // Advances one step. Returns false once the run has terminated.
    bool step();
    bool finished() const { return finished_; }
    Step current_step() const { return step_; }

    RunLog finish();

    const SimConfig& config() const { return config_; }
    const GridWorld& world() const { return world_; }
    const PheromoneField& field() const { return field_; }
    const Medium& medium() const { return medium_; }
    const std::vector<Robot>& robots() const { return robots_; }
    const NeighborTable& neighbors(RobotId id) const { return tables_.at(static_cast<std::size_t>(id)); }
    const RunLog& log() const { return log_; }

private:
    void place_entities();
    void deliver_packets();
    void handle_packets();
    void lay_pheromone();
    void move_robots();
    void resolve_transitions();
    void check_termination();

    void set_state(Robot& robot, RobotState next);
    void dispatch(Robot& robot, std::vector<Outgoing>& out);
    void become_coordinator(Robot& robot, MineId mine);
    void release_coordinator(Robot& robot);
    void rest(Robot& robot);
    void start_disarm(Robot& coordinator);
    void register_arrival(Robot& robot);
    TaskRecord& task_record(const TaskKey& key);
    std::vector<CellCoord> positions() const;
    void dump_step();

    SimConfig config_;
    RunOptions options_;
    SeededRng rng_;
    GridWorld world_;
    PheromoneField field_;
    Medium medium_;
    MoveSettings move_settings_;
    std::vector<Robot> robots_;
    std::vector<NeighborTable> tables_;
    std::vector<std::vector<bool>> robot_visited_;
    std::vector<std::vector<Delivery>> inbox_;
    std::vector<PacketTraceRecord> trace_buffer_;

    struct DisarmJob {
        MineId mine = -1;
        RobotId coordinator = kNoRobot;
        std::vector<RobotId> team;
        int remaining = 0;
    };
    std::vector<DisarmJob> disarm_jobs_;
    // Trip start per recruit, keyed by robot.
    std::map<RobotId, Step> trip_start_;
    // Trips of recruits that reached their coordinator, per task.
    std::map<TaskKey, std::vector<CoordinationRecord>> trips_;
    std::map<TaskKey, std::size_t> task_index_;

    RunLog log_;
    Step step_ = 0;
    bool finished_ = false;
};

// Validates, runs to completion or max_steps, and returns the log.
RunLog run(const SimConfig& config, const RunOptions& options = {});

}  // namespace atrc
