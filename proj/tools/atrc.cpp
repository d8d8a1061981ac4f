#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atrc/config.hpp"
#include "atrc/engine.hpp"
#include "atrc/metrics.hpp"
#include "atrc/sweep.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kComplete = 0;
constexpr int kCapped = 1;
constexpr int kError = 2;

struct RunArgs {
    std::string config;
    std::string mode;
    std::optional<std::uint64_t> seed;
    std::string seeds;
    std::string out;
    bool field_dump = false;
    bool packet_trace = false;
    bool robot_trace = false;
    bool json = false;
};

struct SweepArgs {
    std::string spec;
    std::string preset;
    std::string seeds;
    std::string out;
    int parallel = 1;
};

fs::path out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("ATRC_OUT_DIR"); env && *env) return env;
    return {};
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

int cmd_run(const RunArgs& a) {
    atrc::SimConfig base = a.config.empty() ? atrc::SimConfig{} : atrc::load_config(a.config);
    if (!a.mode.empty() && !atrc::parse_mode(a.mode, base.mode)) {
        throw atrc::ConfigError("unknown mode: " + a.mode);
    }
    std::vector<std::uint64_t> seeds;
    if (!a.seeds.empty()) {
        seeds = atrc::parse_seeds(a.seeds);
        if (seeds.empty()) throw atrc::ConfigError("empty seed list");
    } else {
        seeds.push_back(a.seed.value_or(base.seed));
    }

    const fs::path dir = out_dir(a.out);
    const bool traces = a.field_dump || a.packet_trace || a.robot_trace || a.json;
    const fs::path trace_dir = dir.empty() ? fs::path(".") : dir;
    if (!dir.empty() || traces) fs::create_directories(trace_dir);

    std::ofstream csv_file;
    if (!dir.empty()) csv_file = open_out(dir / "runs.csv");
    std::ostream& csv = dir.empty() ? std::cout : csv_file;
    csv << atrc::csv_header() << '\n';

    int status = kComplete;
    for (auto seed : seeds) {
        atrc::SimConfig c = base;
        c.seed = seed;
        c.validate();
        const std::string stem = std::string(atrc::to_string(c.mode)) + "_seed" + std::to_string(seed);
        std::ofstream field, packets, robots;
        atrc::RunOptions options;
        options.record_events = a.json;
        if (a.field_dump) {
            field = open_out(trace_dir / ("field_" + stem + ".csv"));
            options.field_dump = &field;
        }
        if (a.packet_trace) {
            packets = open_out(trace_dir / ("packets_" + stem + ".csv"));
            options.packet_trace = &packets;
        }
        if (a.robot_trace) {
            robots = open_out(trace_dir / ("robots_" + stem + ".csv"));
            options.robot_trace = &robots;
        }
        const atrc::RunLog log = atrc::run(c, options);
        if (a.json) open_out(trace_dir / ("runlog_" + stem + ".json")) << atrc::to_json(log) << '\n';
        const auto record = atrc::evaluate(log);
        csv << atrc::csv_row(record) << '\n';
        if (record.capped) status = kCapped;
    }
    return status;
}

int cmd_sweep(const SweepArgs& a) {
    if (a.spec.empty() == a.preset.empty()) throw atrc::ConfigError("give exactly one of a spec file or --preset");
    atrc::SweepSpec spec;
    if (!a.preset.empty()) {
        auto p = atrc::preset(a.preset);
        if (!p) throw atrc::ConfigError("unknown preset: " + a.preset);
        spec = std::move(*p);
    } else {
        spec = atrc::load_sweep(a.spec);
    }
    if (!a.seeds.empty()) spec.seeds = atrc::parse_seeds(a.seeds);
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw atrc::ConfigError(e.what());
    }

    const auto rows = atrc::run_sweep(spec, a.parallel);

    fs::path dir = out_dir(a.out);
    if (dir.empty()) dir = ".";
    fs::create_directories(dir);
    {
        auto f = open_out(dir / (spec.name + "_runs.csv"));
        atrc::write_sweep_rows(f, spec, rows);
    }
    {
        auto f = open_out(dir / (spec.name + "_summary.csv"));
        atrc::write_sweep_summary(f, spec, rows);
    }
    atrc::write_sweep_summary(std::cout, spec, rows);

    int status = kComplete;
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            std::cerr << "run failed (" << row.variant << ", " << row.value << ", seed " << row.seed
                      << "): " << row.error << '\n';
            status = kCapped;
        } else if (row.metrics->capped) {
            status = kCapped;
        }
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ATRC swarm demining simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Run one scenario and print its metrics row");
    run->add_option("--config", run_args.config, "Scenario file (INI)");
    run->add_option("--mode", run_args.mode, "oe | ers | erp")->check(CLI::IsMember({"oe", "ers", "erp"}));
    run->add_option("--seed", run_args.seed, "Seed");
    run->add_option("--seeds", run_args.seeds, "Seed range A..B or list");
    run->add_option("--out", run_args.out, "Output directory (default $ATRC_OUT_DIR, else stdout)");
    run->add_flag("--field-dump", run_args.field_dump, "Write per-step pheromone fields");
    run->add_flag("--packet-trace", run_args.packet_trace, "Write the packet trace");
    run->add_flag("--robot-trace", run_args.robot_trace, "Write per-step robot positions and states");
    run->add_flag("--json", run_args.json, "Write the full run log as JSON");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep->add_option("spec", sweep_args.spec, "Sweep file (INI with a [sweep] section)");
    sweep->add_option("--preset", sweep_args.preset, "Built-in sweep");
    sweep->add_option("--seeds", sweep_args.seeds, "Override seeds: A..B or list");
    sweep->add_option("--parallel", sweep_args.parallel, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_args.out, "Output directory (default $ATRC_OUT_DIR, else .)");

    std::string preset_name;
    auto* presets = app.add_subcommand("preset", "Print a built-in sweep as a sweep file, or list them");
    presets->add_option("name", preset_name, "Preset name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*run) return cmd_run(run_args);
        if (*sweep) return cmd_sweep(sweep_args);
        if (preset_name.empty()) {
            for (const auto& n : atrc::preset_names()) std::cout << n << '\n';
            return kComplete;
        }
        const auto p = atrc::preset(preset_name);
        if (!p) throw atrc::ConfigError("unknown preset: " + preset_name);
        std::cout << atrc::to_sweep_ini(*p);
        return kComplete;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
}
