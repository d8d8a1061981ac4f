#pragma once

#include <map>
#include <span>
#include <vector>

#include "atrc/packet.hpp"
#include "atrc/rng.hpp"

namespace atrc {

struct NetParams {
    double transmission_radius = 9.0;  // disk radius, in cell widths
    int hello_period = 1;              // steps between HELLO rounds
    int hello_timeout = 3;             // periods without HELLO before an entry expires
    double loss_prob = 0.0;            // independent drop per delivery

    void validate() const;
    Step hello_timeout_steps() const { return static_cast<Step>(hello_timeout) * hello_period; }
};

// One-hop neighbours of a robot, keyed by id, with the step they were last
// heard.
class NeighborTable {
public:
    NeighborTable() = default;
    explicit NeighborTable(RobotId owner) : owner_(owner) {}

    RobotId owner() const { return owner_; }
    void refresh(RobotId id, Step step);
    // Drops entries not heard for more than max_age steps.
    void expire(Step now, Step max_age);
    bool contains(RobotId id) const { return entries_.count(id) != 0; }
    std::vector<RobotId> ids() const;
    const std::map<RobotId, Step>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    RobotId owner_ = kNoRobot;
    std::map<RobotId, Step> entries_;
};

struct Delivery {
    RobotId receiver = kNoRobot;
    RobotId sender = kNoRobot;
    Packet packet;
};

// Unicast that was transmitted but could not reach its receiver.
struct LinkLoss {
    RobotId sender = kNoRobot;
    RobotId receiver = kNoRobot;
    Packet packet;
};

struct PacketTraceRecord {
    Step step = 0;
    PacketKind kind = PacketKind::Hello;
    RobotId sender = kNoRobot;
    RobotId receiver = kNoRobot;  // kNoRobot for broadcast
    RobotId coordinator = kNoRobot;
    int task_id = 0;
    int fant_id = 0;
};

// Idealised disk-model medium. Every packet is delivered or dropped exactly
// one step after it was sent. Transmissions are counted per send, not per
// receiver.
class Medium {
public:
    explicit Medium(NetParams params);

    const NetParams& params() const { return params_; }

    void broadcast(RobotId sender, CellCoord sender_pos, Packet pkt, Step step);
    // Rejected (returns false, nothing counted) when the receiver is the
    // sender or is absent from the sender's neighbour table.
    bool unicast(RobotId sender, RobotId receiver, Packet pkt, Step step, const NeighborTable& sender_table);

    // Delivers everything sent at step - 1. Broadcast reach is measured from
    // the sender's position at send time; unicast reach from both current
    // positions. positions is indexed by RobotId.
    std::vector<Delivery> deliver(Step step, std::span<const CellCoord> positions, const SeededRng& rng);

    // Unicasts dropped by the last deliver() call.
    const std::vector<LinkLoss>& link_losses() const { return link_losses_; }

    const PacketCounts& transmissions() const { return sent_; }
    long long transmissions(PacketKind k) const { return sent_[kind_index(k)]; }
    long long deliveries(PacketKind k) const { return received_[kind_index(k)]; }
    std::size_t in_flight() const { return inflight_.size(); }

    void set_trace(std::vector<PacketTraceRecord>* sink) { trace_ = sink; }

private:
    struct InFlight {
        Packet packet;
        RobotId sender;
        RobotId receiver;  // kNoRobot for broadcast
        CellCoord sender_pos;
        Step send_step;
    };

    void record(const InFlight& f);

    NetParams params_;
    std::vector<InFlight> inflight_;
    std::vector<LinkLoss> link_losses_;
    PacketCounts sent_{};
    PacketCounts received_{};
    std::vector<PacketTraceRecord>* trace_ = nullptr;
};

// Every robot broadcasts a HELLO carrying its id.
void emit_hello(Medium& medium, std::span<const CellCoord> positions, Step step);

// Refreshes neighbour tables from delivered HELLOs, then expires stale
// entries. tables is indexed by RobotId.
void absorb_hellos(std::span<const Delivery> deliveries, std::vector<NeighborTable>& tables,
                   Step now, Step max_age);

}  // namespace atrc
