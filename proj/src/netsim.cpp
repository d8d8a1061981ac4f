#include "atrc/netsim.hpp"

#include <optional>
#include <stdexcept>

namespace atrc {

std::string_view to_string(PacketKind k) {
    switch (k) {
        case PacketKind::Hello: return "HELLO";
        case PacketKind::RtFant: return "RT-FANT";
        case PacketKind::RtBant: return "RT-BANT";
        case PacketKind::RFant: return "R-FANT";
        case PacketKind::RBant: return "R-BANT";
        case PacketKind::Lp: return "LP";
    }
    return "?";
}

void NetParams::validate() const {
    if (transmission_radius < 0.0) throw std::invalid_argument("transmission radius must be >= 0");
    if (hello_period < 1) throw std::invalid_argument("hello_period must be >= 1");
    if (hello_timeout < 1) throw std::invalid_argument("hello_timeout must be >= 1");
    if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) throw std::invalid_argument("loss_prob must lie in [0, 1]");
}

void NeighborTable::refresh(RobotId id, Step step) {
    if (id == owner_) return;
    entries_[id] = step;
}

void NeighborTable::expire(Step now, Step max_age) {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (now - it->second > max_age) {
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
}

std::vector<RobotId> NeighborTable::ids() const {
    std::vector<RobotId> out;
    out.reserve(entries_.size());
    for (const auto& [id, _] : entries_) out.push_back(id);
    return out;
}

Medium::Medium(NetParams params) : params_(params) {
    params_.validate();
}

void Medium::record(const InFlight& f) {
    ++sent_[kind_index(f.packet.kind)];
    if (trace_) {
        trace_->push_back({f.send_step, f.packet.kind, f.sender, f.receiver,
                           f.packet.coordinator, f.packet.task_id, f.packet.fant_id});
    }
}

void Medium::broadcast(RobotId sender, CellCoord sender_pos, Packet pkt, Step step) {
    InFlight f{std::move(pkt), sender, kNoRobot, sender_pos, step};
    record(f);
    inflight_.push_back(std::move(f));
}

bool Medium::unicast(RobotId sender, RobotId receiver, Packet pkt, Step step, const NeighborTable& sender_table) {
    if (receiver == sender || !sender_table.contains(receiver)) return false;
    InFlight f{std::move(pkt), sender, receiver, CellCoord{}, step};
    record(f);
    inflight_.push_back(std::move(f));
    return true;
}

std::vector<Delivery> Medium::deliver(Step step, std::span<const CellCoord> positions, const SeededRng& rng) {
    std::vector<Delivery> out;
    link_losses_.clear();
    std::vector<InFlight> keep;
    const double range_sq = params_.transmission_radius * params_.transmission_radius;
    const bool lossy = params_.loss_prob > 0.0;
    std::vector<std::optional<RngStream>> loss_streams;
    if (lossy) loss_streams.resize(positions.size());
    auto lost = [&](RobotId receiver) {
        if (!lossy) return false;
        auto& s = loss_streams[static_cast<std::size_t>(receiver)];
        if (!s) s = rng.stream(RngConsumer::PacketLoss, receiver, step);
        return s->bernoulli(params_.loss_prob);
    };

    for (auto& f : inflight_) {
        if (f.send_step >= step) {
            keep.push_back(std::move(f));
            continue;
        }
        if (f.send_step < step - 1) throw std::logic_error("in-flight packet missed its delivery step");

        if (f.receiver == kNoRobot) {
            for (std::size_t r = 0; r < positions.size(); ++r) {
                const auto receiver = static_cast<RobotId>(r);
                if (receiver == f.sender) continue;
                if (squared_distance(f.sender_pos, positions[r]) > range_sq) continue;
                if (lost(receiver)) continue;
                ++received_[kind_index(f.packet.kind)];
                out.push_back({receiver, f.sender, f.packet});
            }
        } else {
            const auto s = static_cast<std::size_t>(f.sender);
            const auto r = static_cast<std::size_t>(f.receiver);
            const bool reachable = squared_distance(positions[s], positions[r]) <= range_sq;
            if (reachable && !lost(f.receiver)) {
                ++received_[kind_index(f.packet.kind)];
                out.push_back({f.receiver, f.sender, std::move(f.packet)});
            } else {
                link_losses_.push_back({f.sender, f.receiver, std::move(f.packet)});
            }
        }
    }
    inflight_ = std::move(keep);
    return out;
}

void emit_hello(Medium& medium, std::span<const CellCoord> positions, Step step) {
    for (std::size_t r = 0; r < positions.size(); ++r) {
        Packet hello;
        hello.kind = PacketKind::Hello;
        hello.origin = static_cast<RobotId>(r);
        medium.broadcast(static_cast<RobotId>(r), positions[r], std::move(hello), step);
    }
}

void absorb_hellos(std::span<const Delivery> deliveries, std::vector<NeighborTable>& tables,
                   Step now, Step max_age) {
    for (const auto& d : deliveries) {
        if (d.packet.kind != PacketKind::Hello) continue;
        tables.at(static_cast<std::size_t>(d.receiver)).refresh(d.packet.origin, now);
    }
    for (auto& t : tables) t.expire(now, max_age);
}

}  // namespace atrc
