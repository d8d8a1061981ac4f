#include "atrc/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace atrc {

void ProtocolParams::validate() const {
    if (r_min < 1) throw std::invalid_argument("r_min must be >= 1");
    if (reply_wait < 1) throw std::invalid_argument("reply_wait must be >= 1");
    if (arrival_timeout < 0) throw std::invalid_argument("arrival_timeout must be >= 0");
    if (disarm_time < 1) throw std::invalid_argument("disarm_time must be >= 1");
    if (!(gamma_e >= 0.0 && gamma_e < 1.0)) throw std::invalid_argument("gamma_e must lie in [0, 1)");
    if (!(gamma_r > 0.0)) throw std::invalid_argument("gamma_r must be > 0");
    if (!(abandon_factor >= 1.0)) throw std::invalid_argument("abandon_factor must be >= 1");
    if (request_hops < 0) throw std::invalid_argument("request_hops must be >= 0");
}

std::string_view to_string(CoordinatorPhase p) {
    switch (p) {
        case CoordinatorPhase::Requesting: return "requesting";
        case CoordinatorPhase::Recruiting: return "recruiting";
        case CoordinatorPhase::Waiting: return "waiting";
        case CoordinatorPhase::Disarming: return "disarming";
    }
    return "?";
}

double link_quality(double distance_to_target) {
    return 1.0 / (1.0 + distance_to_target);
}

void update_routing(RoutingRow& row, RobotId link, double q, double gamma_e, double gamma_r) {
    row.try_emplace(link, 0.0);
    for (auto& [_, p] : row) p *= (1.0 - gamma_e);
    row[link] += gamma_r * q;
    double total = 0.0;
    for (const auto& [_, p] : row) total += p;
    if (total <= 0.0) {
        const double uniform = 1.0 / static_cast<double>(row.size());
        for (auto& [_, p] : row) p = uniform;
        return;
    }
    for (auto& [_, p] : row) p /= total;
}

RoutingRow& RoutingTable::ensure_row(const RouteKey& key, std::span<const RobotId> neighbors) {
    auto [it, inserted] = rows_.try_emplace(key);
    if (inserted && !neighbors.empty()) {
        const double uniform = 1.0 / static_cast<double>(neighbors.size());
        for (RobotId n : neighbors) it->second[n] = uniform;
    }
    return it->second;
}

const RoutingRow* RoutingTable::row(const RouteKey& key) const {
    auto it = rows_.find(key);
    return it == rows_.end() ? nullptr : &it->second;
}

void RoutingTable::reinforce(const RouteKey& key, RobotId link, double q, double gamma_e, double gamma_r) {
    update_routing(rows_[key], link, q, gamma_e, gamma_r);
}

std::optional<RobotId> RoutingTable::best_link(const RouteKey& key, std::span<const RobotId> candidates) const {
    if (candidates.empty()) return std::nullopt;
    const RoutingRow* r = row(key);
    std::optional<RobotId> best;
    double best_p = -1.0;
    for (RobotId c : candidates) {
        double p = 0.0;
        if (r) {
            if (auto it = r->find(c); it != r->end()) p = it->second;
        }
        if (p > best_p || (p == best_p && best && c < *best)) {
            best = c;
            best_p = p;
        }
    }
    return best;
}

void RoutingTable::erase_task(const TaskKey& task) {
    for (auto it = rows_.begin(); it != rows_.end();) {
        if (it->first.coordinator == task.coordinator && it->first.task_id == task.task_id) {
            it = rows_.erase(it);
        } else {
            ++it;
        }
    }
}

void SeenFantCache::purge(const TaskKey& task) {
    for (auto it = seen_.begin(); it != seen_.end();) {
        if (it->coordinator == task.coordinator && it->task_id == task.task_id) {
            it = seen_.erase(it);
        } else {
            ++it;
        }
    }
}

double reply_probability(const TaskCounters& c) {
    if (c.fants_seen <= 0) return 1.0;
    const double p = 1.0 - static_cast<double>(c.bants_sent) / static_cast<double>(c.fants_seen);
    return std::clamp(p, 0.0, 1.0);
}

void ProtocolMemory::forget_task(const TaskKey& task) {
    routes.erase_task(task);
    seen.purge(task);
    counters.erase(task);
}

namespace {

// Robot that precedes `self` on a forward path, if any.
std::optional<RobotId> previous_hop(const std::vector<RobotId>& path, RobotId self) {
    auto it = std::find(path.begin(), path.end(), self);
    if (it == path.end() || it == path.begin()) return std::nullopt;
    return *(it - 1);
}

Packet make_request(const CoordinatorState& state, RobotId self, int needed) {
    Packet p;
    p.kind = PacketKind::RtFant;
    p.coordinator = self;
    p.task_id = state.task.task_id;
    p.fant_id = state.fant_id;
    p.task_type = TaskType::Recruiting;
    p.crossed_path = {self};
    p.target_cell = state.target;
    p.needed_robots = needed;
    return p;
}

void send_request(CoordinatorState& state, ProtocolMemory& mem, const NodeView& node,
                  const ProtocolParams& params, Step now, std::vector<Outgoing>& out) {
    state.fant_id = mem.next_fant_id++;
    state.phase = CoordinatorPhase::Requesting;
    state.deadline = now + params.reply_wait;
    state.needed = params.recruits_needed() - static_cast<int>(state.arrived.size());
    state.echoed = false;
    Packet p = make_request(state, node.self, state.needed);
    p.hop_limit = params.request_hops;
    mem.seen.insert(fant_of(p));
    out.push_back({kNoRobot, std::move(p)});
}

void send_leave(CoordinatorState& state, ProtocolMemory& mem, const NodeView& node, std::vector<Outgoing>& out) {
    Packet lp;
    lp.kind = PacketKind::Lp;
    lp.coordinator = node.self;
    lp.task_id = state.task.task_id;
    lp.fant_id = mem.next_fant_id++;
    lp.task_type = TaskType::Recruiting;
    lp.crossed_path = {node.self};
    lp.target_cell = state.target;
    mem.seen.insert(fant_of(lp));
    out.push_back({kNoRobot, std::move(lp)});
}

}  // namespace

CoordinatorState coordinator_start(ProtocolMemory& mem, const NodeView& node, MineId mine,
                                   CellCoord mine_cell, const ProtocolParams& params, Step now,
                                   std::vector<Outgoing>& out) {
    CoordinatorState state;
    state.task = {node.self, mem.next_task_id++};
    state.mine = mine;
    state.target = mine_cell;
    state.started = now;
    state.last_progress = now;
    const auto nbrs = node.neighbor_ids();
    mem.routes.ensure_row({node.self, state.task.task_id, TaskType::Recruiting}, nbrs);
    send_request(state, mem, node, params, now, out);
    return state;
}

void forager_handle_rtfant(ProtocolMemory& mem, const NodeView& node, const Packet& pkt,
                           RngStream& rng, std::vector<Outgoing>& out) {
    if (!mem.seen.insert(fant_of(pkt))) return;

    const auto nbrs = node.neighbor_ids();
    mem.routes.ensure_row(route_of(pkt), nbrs);
    auto& counters = mem.counters[task_of(pkt)];
    ++counters.fants_seen;

    Packet forward = pkt;
    forward.crossed_path.push_back(node.self);

    if (node.forager && node.self != pkt.coordinator && !pkt.crossed_path.empty()) {
        if (rng.bernoulli(reply_probability(counters))) {
            Packet bant = forward;
            bant.kind = PacketKind::RtBant;
            bant.origin = node.self;
            bant.path_degree = link_quality(euclidean(node.position, pkt.target_cell));
            out.push_back({pkt.crossed_path.back(), std::move(bant)});
            ++counters.bants_sent;
        }
    }
    // crossed_path now holds the coordinator plus one robot per hop.
    if (pkt.hop_limit > 0 && static_cast<int>(forward.crossed_path.size()) > pkt.hop_limit) return;
    out.push_back({kNoRobot, std::move(forward)});
}

bool handle_backward_ant(ProtocolMemory& mem, const NodeView& node, const Packet& pkt, RobotId from,
                         const ProtocolParams& params, std::vector<Outgoing>& out) {
    mem.routes.reinforce(route_of(pkt), from, pkt.path_degree, params.gamma_e, params.gamma_r);
    if (node.self == pkt.coordinator) return true;

    const auto next = previous_hop(pkt.crossed_path, node.self);
    if (!next) return false;
    out.push_back({*next, pkt});
    if (pkt.kind == PacketKind::RtBant) ++mem.counters[task_of(pkt)].bants_sent;
    return false;
}

RFantOutcome handle_rfant(ProtocolMemory& mem, const NodeView& node, const Packet& pkt,
                          std::vector<Outgoing>& out) {
    RFantOutcome outcome;
    if (!mem.seen.insert(fant_of(pkt))) {
        outcome.duplicate = true;
        return outcome;
    }
    const auto nbrs = node.neighbor_ids();
    mem.routes.ensure_row(route_of(pkt), nbrs);

    Packet forward = pkt;
    forward.crossed_path.push_back(node.self);

    if (node.forager && node.self != pkt.coordinator && !pkt.crossed_path.empty()) {
        outcome.accepted = true;
        Packet bant = forward;
        bant.kind = PacketKind::RBant;
        bant.origin = node.self;
        bant.path_degree = link_quality(euclidean(node.position, pkt.target_cell));
        out.push_back({pkt.crossed_path.back(), std::move(bant)});
        forward.needed_robots = pkt.needed_robots - 1;
    }

    if (forward.needed_robots > 0) {
        std::vector<RobotId> candidates;
        for (RobotId n : nbrs) {
            if (std::find(forward.crossed_path.begin(), forward.crossed_path.end(), n) ==
                forward.crossed_path.end()) {
                candidates.push_back(n);
            }
        }
        if (auto next = mem.routes.best_link(route_of(pkt), candidates)) {
            out.push_back({*next, std::move(forward)});
        }
    }
    return outcome;
}

bool reroute_rfant(ProtocolMemory& mem, const NodeView& node, const Packet& lost, RobotId failed,
                   std::vector<Outgoing>& out) {
    std::vector<RobotId> candidates;
    for (RobotId n : node.neighbor_ids()) {
        if (n == failed) continue;
        if (std::find(lost.crossed_path.begin(), lost.crossed_path.end(), n) != lost.crossed_path.end()) continue;
        candidates.push_back(n);
    }
    const auto next = mem.routes.best_link(route_of(lost), candidates);
    if (!next) return false;
    out.push_back({*next, lost});
    return true;
}

bool handle_lp(ProtocolMemory& mem, const NodeView& node, const Packet& pkt, std::vector<Outgoing>& out) {
    if (!mem.seen.insert(fant_of(pkt))) return false;
    Packet forward = pkt;
    forward.crossed_path.push_back(node.self);
    out.push_back({kNoRobot, std::move(forward)});
    return true;
}

void coordinator_record(CoordinatorState& state, const Packet& bant, Step now) {
    if (task_of(bant) != state.task) return;
    if (bant.kind == PacketKind::RtFant) {
        if (bant.fant_id == state.fant_id) state.echoed = true;
    } else if (bant.kind == PacketKind::RtBant) {
        if (state.phase != CoordinatorPhase::Requesting) return;
        const bool known = std::any_of(state.replies.begin(), state.replies.end(),
                                       [&](const auto& r) { return r.first == bant.origin; });
        if (!known) {
            const double distance = bant.path_degree > 0.0 ? 1.0 / bant.path_degree - 1.0 : 0.0;
            state.replies.emplace_back(bant.origin, distance);
        }
    } else if (bant.kind == PacketKind::RBant) {
        state.confirmed.insert(bant.origin);
        state.last_confirm = now;
        if (state.phase == CoordinatorPhase::Recruiting) state.phase = CoordinatorPhase::Waiting;
    }
}

TimeoutAction coordinator_timeout(CoordinatorState& state, ProtocolMemory& mem, const NodeView& node,
                                  const ProtocolParams& params, Step now, Step arrival_timeout,
                                  std::vector<Outgoing>& out) {
    if (state.phase != CoordinatorPhase::Requesting || now < state.deadline) return TimeoutAction::None;

    const int replies = static_cast<int>(state.replies.size());
    if (replies == 0 && state.arrived.empty() && state.echoed) return TimeoutAction::Abandon;
    if (replies < state.needed) {
        send_request(state, mem, node, params, now, out);
        return TimeoutAction::Rerequest;
    }

    const RouteKey key{node.self, state.task.task_id, TaskType::Recruiting};
    const auto nbrs = node.neighbor_ids();
    const auto link = mem.routes.best_link(key, nbrs);
    if (!link) {
        send_request(state, mem, node, params, now, out);
        return TimeoutAction::Rerequest;
    }

    Packet rfant = make_request(state, node.self, state.needed);
    rfant.kind = PacketKind::RFant;
    rfant.fant_id = mem.next_fant_id++;
    mem.seen.insert(fant_of(rfant));
    out.push_back({*link, std::move(rfant)});
    state.phase = CoordinatorPhase::Recruiting;
    state.deadline = now + arrival_timeout;
    state.last_confirm = now;
    return TimeoutAction::Recruit;
}

void coordinator_abandon(CoordinatorState& state, ProtocolMemory& mem, const NodeView& node,
                         std::vector<Outgoing>& out) {
    if (!state.confirmed.empty() || !state.arrived.empty()) send_leave(state, mem, node, out);
}

ArrivalAction coordinator_manage_arrivals(CoordinatorState& state, ProtocolMemory& mem,
                                          const NodeView& node, const ProtocolParams& params, Step now,
                                          std::vector<Outgoing>& out) {
    if (state.phase == CoordinatorPhase::Disarming) return ArrivalAction::None;

    const auto stragglers = [&] {
        for (RobotId r : state.confirmed) {
            if (!state.arrived.count(r)) return true;
        }
        return false;
    };

    if (state.team_complete(params)) {
        bool unconfirmed_arrival = false;
        for (RobotId r : state.arrived) {
            if (!state.confirmed.count(r)) unconfirmed_arrival = true;
        }
        if (stragglers() || unconfirmed_arrival) send_leave(state, mem, node, out);
        state.phase = CoordinatorPhase::Disarming;
        return ArrivalAction::StartDisarm;
    }

    if (state.phase == CoordinatorPhase::Requesting) return ArrivalAction::None;
    const bool chain_done = !stragglers() && now - state.last_confirm >= params.reply_wait;
    if (now < state.deadline && !chain_done) return ArrivalAction::None;

    if (stragglers()) send_leave(state, mem, node, out);
    state.replies.clear();
    std::erase_if(state.confirmed, [&](RobotId r) { return !state.arrived.count(r); });
    send_request(state, mem, node, params, now, out);
    return ArrivalAction::Rerequest;
}

}  // namespace atrc
