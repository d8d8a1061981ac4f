#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "atrc/engine.hpp"

namespace atrc {

struct Audit {
    bool full_coverage = false;     // every free cell visited at least once
    long long unvisited_cells = 0;
    int mines_disarmed = 0;
    // Disarmed mines whose team size differs from r_min.
    std::vector<MineId> wrong_team_size;
    bool passed() const { return full_coverage && wrong_team_size.empty(); }
};

struct MetricsRecord {
    Mode mode = Mode::ExplorationOnly;
    int robots = 0;
    int mines = 0;
    int width = 0;
    int height = 0;
    std::uint64_t seed = 0;
    Step total_steps = 0;
    double exploration_term = 0.0;
    double coordination_term = 0.0;
    double objective = 0.0;
    PacketCounts overhead{};  // HELLO slot left at zero
    long long overhead_total = 0;
    double coverage = 0.0;
    int mines_disarmed = 0;
    bool capped = false;
    Audit audit;
};

MetricsRecord evaluate(const RunLog& log);

struct Summary {
    double mean = 0.0;
    double stddev = 0.0;
    double ci95 = 0.0;  // half-width
    std::size_t n = 0;
};

// Sample statistics; throws std::invalid_argument with fewer than two values.
Summary summarize(std::span<const double> values);

// Summary per numeric field of MetricsRecord, keyed by CSV column name.
std::map<std::string, Summary> aggregate(std::span<const MetricsRecord> records);

// "rtfant:3;rtbant:2;rfant:1;rbant:1;lp:0"
std::string overhead_by_kind(const PacketCounts& c);

std::string csv_header();
std::string csv_row(const MetricsRecord& r);

}  // namespace atrc
