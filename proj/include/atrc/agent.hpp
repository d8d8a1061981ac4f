#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "atrc/netsim.hpp"
#include "atrc/pheromone.hpp"
#include "atrc/policy.hpp"
#include "atrc/protocol.hpp"
#include "atrc/world.hpp"

namespace atrc {

enum class RobotState { Forager, Coordinator, Recruited, Waiting, Execution };

std::string_view to_string(RobotState s);

// Transitions the state machine may take. Any other edge in a trace is a bug.
//   F->C  detects a mine          F->R  answers a request / smells theta
//   R->F  released, lost or gives up
//   R->C  meets a hidden mine on the way
//   R->W  reaches the mine        W->E  team complete
//   W->F  coordinator gives up    C->E  team complete
//   C->F  nobody answered         E->F  disarm finished
bool is_valid_transition(RobotState from, RobotState to);

enum class ExplorationPolicy { Pheromone, RandomWalk };

// Task a robot has committed to.
struct Assignment {
    TaskKey task;
    CellCoord target;
    MineId mine = -1;  // -1 while unknown (stigmergy recruits follow a gradient)
    Step recruited_at = 0;
    double initial_distance = 0.0;
};

struct Robot {
    RobotId id = kNoRobot;
    CellCoord position;
    RobotState state = RobotState::Forager;
    std::optional<Assignment> assignment;
    std::optional<CoordinatorState> coordination;
    ProtocolMemory memory;
    int execution_remaining = 0;
    // Until this step a released robot ignores theta and detected mines.
    Step rest_until = 0;
    Step arrived_at = -1;
};

struct MoveSettings {
    Mode mode = Mode::ExplorationOnly;
    ExplorationPolicy exploration = ExplorationPolicy::Pheromone;
    MoveScoreParams scores;
    double theta_threshold = 1e-3;
    double abandon_factor = 2.0;
    bool static_foragers = false;
};

enum class MoveIntent { Explore, FollowTheta, Approach };

struct MoveDecision {
    std::optional<CellCoord> next;  // empty: stay in place
    MoveIntent intent = MoveIntent::Explore;
    // State change the mover decided on before moving (F->R on smelling
    // theta, R->F on losing the trail or giving up).
    std::optional<RobotState> new_state;
};

// Movement half of a robot step: pick the next cell from the current field
// snapshot and free neighbours. Waiting, Execution and Coordinator robots
// never move.
MoveDecision decide_move(const Robot& robot, const GridWorld& world, const PheromoneField& field,
                         const MoveSettings& settings, Step now, RngStream& rng);

// Whether a recruit counts as arrived at its mine cell.
inline bool has_arrived(CellCoord position, CellCoord target) { return chebyshev(position, target) <= 1; }

// Incoming R-FANTs are served nearest target first, then lowest task id.
void order_recruitment_requests(std::vector<Packet>& requests, CellCoord position);

}  // namespace atrc
