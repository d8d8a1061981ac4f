#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "atrc/types.hpp"

namespace atrc {

enum class PacketKind { Hello, RtFant, RtBant, RFant, RBant, Lp };

inline constexpr std::size_t kPacketKindCount = 6;
inline constexpr std::array<PacketKind, 5> kControlKinds = {
    PacketKind::RtFant, PacketKind::RtBant, PacketKind::RFant, PacketKind::RBant, PacketKind::Lp};

std::string_view to_string(PacketKind k);

enum class TaskType { Recruiting, Disarming, Discovery };

struct Packet {
    PacketKind kind = PacketKind::Hello;
    RobotId coordinator = kNoRobot;
    int task_id = 0;
    int fant_id = 0;
    TaskType task_type = TaskType::Recruiting;
    // Path quality carried by backward ants: 1 / (1 + d), d being the
    // originator's distance to the target cell.
    double path_degree = 0.0;
    // Robots crossed by the forward ant, coordinator first. Backward ants keep
    // the full forward path and walk it in reverse.
    std::vector<RobotId> crossed_path;
    CellCoord target_cell;
    int needed_robots = 0;
    // Hops an RT-FANT may travel from the coordinator; 0 means unlimited.
    int hop_limit = 0;
    // Robot that created a backward ant.
    RobotId origin = kNoRobot;
};

using PacketCounts = std::array<long long, kPacketKindCount>;

inline std::size_t kind_index(PacketKind k) { return static_cast<std::size_t>(k); }

}  // namespace atrc
