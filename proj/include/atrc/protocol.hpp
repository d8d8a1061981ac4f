#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "atrc/netsim.hpp"
#include "atrc/packet.hpp"
#include "atrc/rng.hpp"

namespace atrc {

struct ProtocolParams {
    int r_min = 4;
    int reply_wait = 10;       // steps the coordinator waits for RT-BANTs
    int arrival_timeout = 0;   // 0 selects 4 * max(m, n)
    int disarm_time = 5;
    double gamma_e = 0.1;      // routing evaporation
    double gamma_r = 0.3;      // routing reinforcement
    double abandon_factor = 2.0;
    // RT-FANT flood radius in hops; 0 floods the whole connected swarm.
    int request_hops = 0;
    bool coordinator_counts = true;
    bool recruited_deposit = true;  // recruits keep laying repellent pheromone

    void validate() const;
    // Recruits a coordinator needs besides itself.
    int recruits_needed() const { return coordinator_counts ? r_min - 1 : r_min; }
};

struct TaskKey {
    RobotId coordinator = kNoRobot;
    int task_id = 0;
    friend auto operator<=>(const TaskKey&, const TaskKey&) = default;
};

struct FantKey {
    RobotId coordinator = kNoRobot;
    int task_id = 0;
    int fant_id = 0;
    friend auto operator<=>(const FantKey&, const FantKey&) = default;
};

struct RouteKey {
    RobotId coordinator = kNoRobot;
    int task_id = 0;
    TaskType type = TaskType::Recruiting;
    friend auto operator<=>(const RouteKey&, const RouteKey&) = default;
};

inline TaskKey task_of(const Packet& p) { return {p.coordinator, p.task_id}; }
inline FantKey fant_of(const Packet& p) { return {p.coordinator, p.task_id, p.fant_id}; }
inline RouteKey route_of(const Packet& p) { return {p.coordinator, p.task_id, p.task_type}; }

// Next-hop probabilities for one (coordinator, task, type) destination.
using RoutingRow = std::map<RobotId, double>;

// Quality of a reply from a robot at the given distance to the target.
double link_quality(double distance_to_target);

// Evaporates every link by gamma_e, reinforces `link` by gamma_r * q, then
// renormalises the row. A link missing from the row is added first.
void update_routing(RoutingRow& row, RobotId link, double q, double gamma_e, double gamma_r);

class RoutingTable {
public:
    // Creates the row uniform over `neighbors` when absent.
    RoutingRow& ensure_row(const RouteKey& key, std::span<const RobotId> neighbors);
    const RoutingRow* row(const RouteKey& key) const;
    void reinforce(const RouteKey& key, RobotId link, double q, double gamma_e, double gamma_r);
    // Highest-probability candidate; candidates missing from the row score 0.
    // Ties go to the lowest id. Empty when there are no candidates.
    std::optional<RobotId> best_link(const RouteKey& key, std::span<const RobotId> candidates) const;
    void erase_task(const TaskKey& task);
    std::size_t size() const { return rows_.size(); }

private:
    std::map<RouteKey, RoutingRow> rows_;
};

class SeenFantCache {
public:
    // True when the key was not seen before.
    bool insert(const FantKey& key) { return seen_.insert(key).second; }
    bool contains(const FantKey& key) const { return seen_.count(key) != 0; }
    void purge(const TaskKey& task);
    std::size_t size() const { return seen_.size(); }

private:
    std::set<FantKey> seen_;
};

struct TaskCounters {
    int fants_seen = 0;
    int bants_sent = 0;  // originated or relayed toward the coordinator
};

// clamp(1 - bants_sent / fants_seen, 0, 1); 1 with no history.
double reply_probability(const TaskCounters& c);

// Per-robot protocol state.
struct ProtocolMemory {
    RoutingTable routes;
    SeenFantCache seen;
    std::map<TaskKey, TaskCounters> counters;
    int next_task_id = 0;
    int next_fant_id = 0;

    void forget_task(const TaskKey& task);
};

// Outgoing packet; `to == kNoRobot` means broadcast.
struct Outgoing {
    RobotId to = kNoRobot;
    Packet packet;
};

// What a handler may know about the robot running it.
struct NodeView {
    RobotId self = kNoRobot;
    CellCoord position;
    bool forager = false;
    const NeighborTable* neighbors = nullptr;

    std::vector<RobotId> neighbor_ids() const { return neighbors ? neighbors->ids() : std::vector<RobotId>{}; }
};

enum class CoordinatorPhase { Requesting, Recruiting, Waiting, Disarming };

std::string_view to_string(CoordinatorPhase p);

struct CoordinatorState {
    TaskKey task;
    MineId mine = -1;
    CellCoord target;
    CoordinatorPhase phase = CoordinatorPhase::Requesting;
    Step started = 0;   // task start, the detection step
    Step deadline = 0;  // reply or arrival timer expiry
    Step last_progress = 0;  // task start or latest arrival
    Step last_confirm = 0;   // R-FANT sent or latest R-BANT
    int fant_id = 0;    // current request
    int needed = 0;     // recruits still missing when the current request went out
    bool echoed = false;  // current request overheard being rebroadcast
    std::vector<std::pair<RobotId, double>> replies;  // distinct repliers and their distance
    std::set<RobotId> confirmed;                      // R-BANT received
    std::set<RobotId> arrived;                        // recruits waiting at the mine

    int team_target(const ProtocolParams& p) const { return p.recruits_needed(); }
    bool team_complete(const ProtocolParams& p) const {
        return static_cast<int>(arrived.size()) >= team_target(p);
    }
};

// Opens a task for a freshly detected mine and floods an RT-FANT.
CoordinatorState coordinator_start(ProtocolMemory& mem, const NodeView& node, MineId mine,
                                   CellCoord mine_cell, const ProtocolParams& params, Step now,
                                   std::vector<Outgoing>& out);

// RT-FANT at any robot. Duplicates are dropped silently; otherwise a forager
// may answer with an RT-BANT and every robot rebroadcasts the request.
void forager_handle_rtfant(ProtocolMemory& mem, const NodeView& node, const Packet& pkt,
                           RngStream& rng, std::vector<Outgoing>& out);

// RT-BANT or R-BANT arriving from `from`. Updates the routing row, then
// relays one hop back along the crossed path. Returns true when this robot is
// the coordinator the ant is addressed to.
bool handle_backward_ant(ProtocolMemory& mem, const NodeView& node, const Packet& pkt, RobotId from,
                         const ProtocolParams& params, std::vector<Outgoing>& out);

struct RFantOutcome {
    bool duplicate = false;
    bool accepted = false;
};

// R-FANT at any robot. A forager accepts and confirms with an R-BANT; the
// request continues on the best remaining link while robots are still needed.
RFantOutcome handle_rfant(ProtocolMemory& mem, const NodeView& node, const Packet& pkt,
                          std::vector<Outgoing>& out);

// A unicast R-FANT that never reached `failed`: the sender tries its next
// best link. Returns false when no link is left.
bool reroute_rfant(ProtocolMemory& mem, const NodeView& node, const Packet& lost, RobotId failed,
                   std::vector<Outgoing>& out);

// LP flood. Returns false for duplicates (not rebroadcast).
bool handle_lp(ProtocolMemory& mem, const NodeView& node, const Packet& pkt, std::vector<Outgoing>& out);

// Coordinator bookkeeping for a backward ant that reached it, or for its own
// RT-FANT overheard from a neighbour.
void coordinator_record(CoordinatorState& state, const Packet& pkt, Step now);

enum class TimeoutAction { None, Abandon, Rerequest, Recruit };

// Reply timer handling in the Requesting phase. Abandons only when the
// request was echoed, nobody answered and nobody is waiting; an isolated
// coordinator asks again.
TimeoutAction coordinator_timeout(CoordinatorState& state, ProtocolMemory& mem, const NodeView& node,
                                  const ProtocolParams& params, Step now, Step arrival_timeout,
                                  std::vector<Outgoing>& out);

// Gives the task up. Sends an LP when any recruit is committed so it stops
// travelling or waiting.
void coordinator_abandon(CoordinatorState& state, ProtocolMemory& mem, const NodeView& node,
                         std::vector<Outgoing>& out);

enum class ArrivalAction { None, StartDisarm, Rerequest };

// Team completion and arrival timer handling while recruits travel. A new
// request goes out when the arrival timer expires, or when every confirmed
// recruit has arrived and no R-BANT came for reply_wait steps.
ArrivalAction coordinator_manage_arrivals(CoordinatorState& state, ProtocolMemory& mem,
                                          const NodeView& node, const ProtocolParams& params, Step now,
                                          std::vector<Outgoing>& out);

}  // namespace atrc
