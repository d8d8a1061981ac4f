#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atrc/engine.hpp"
#include "atrc/metrics.hpp"

namespace atrc {

enum class Axis { Robots, Mines, GridSize, A1, A2, Rho };

std::string_view to_string(Axis a);
bool parse_axis(std::string_view text, Axis& out);

// Named algorithm setting applied on top of the base config:
//   oe, ers, erp        exploration only / stigmergy / protocol recruitment
//   oe_random_walk      exploration only with uniform random moves
//   ias_ss              exploration only with the IAS-SS kernel (a1 = 0.1, a2 = 1000)

bool is_known_variant(const std::string& name);
void apply_variant(SimConfig& config, const std::string& name);
void apply_axis(SimConfig& config, Axis axis, double value);

struct SweepSpec {
    std::string name;
    SimConfig base;
    Axis axis = Axis::Robots;
    std::vector<double> values;
    std::vector<std::string> variants;  // empty: the base mode as is
    std::vector<std::uint64_t> seeds;

    // Throws std::invalid_argument (empty seed or value list, unknown variant).
    void validate() const;
};

// Names accepted by preset(): fig5, fig5_a2, fig6, fig14, fig15, fig16, fig17,
// fig18, fig18_robots, fig19, ias_ss_compare.
std::vector<std::string> preset_names();
std::optional<SweepSpec> preset(const std::string& name);

// A sweep file is a scenario file plus a [sweep] section:
//   name, axis, values = "4, 8, 16", variants = "ers, erp", seeds = "1..30" or "1, 2, 5"
SweepSpec load_sweep(const std::string& path);
SweepSpec parse_sweep(std::istream& in, const std::string& fallback_name = "sweep");
std::string to_sweep_ini(const SweepSpec& spec);

// "A..B" or a comma list.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

struct SweepRow {
    std::string variant;
    double value = 0.0;
    std::uint64_t seed = 0;
    std::optional<MetricsRecord> metrics;
    std::string error;  // set when the run failed
};

// Runs every (variant, value, seed) combination on up to `parallel` threads.
// Rows come back in (variant, value, seed) order whatever the thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int parallel);

std::string sweep_csv_header();
void write_sweep_rows(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);
// One line per (variant, value): count, failures and mean/std/ci95 of the
// main metrics over successful rows.
void write_sweep_summary(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace atrc
