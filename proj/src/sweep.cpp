#include "atrc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "atrc/config.hpp"

namespace atrc {

std::string_view to_string(Axis a) {
    switch (a) {
        case Axis::Robots: return "robots";
        case Axis::Mines: return "mines";
        case Axis::GridSize: return "gridSize";
        case Axis::A1: return "a1";
        case Axis::A2: return "a2";
        case Axis::Rho: return "rho";
    }
    return "?";
}

bool parse_axis(std::string_view text, Axis& out) {
    for (Axis a : {Axis::Robots, Axis::Mines, Axis::GridSize, Axis::A1, Axis::A2, Axis::Rho}) {
        if (boost::iequals(text, to_string(a))) {
            out = a;
            return true;
        }
    }
    return false;
}

bool is_known_variant(const std::string& name) {
    return name == "oe" || name == "ers" || name == "erp" || name == "oe_random_walk" || name == "ias_ss";
}

void apply_variant(SimConfig& c, const std::string& name) {
    if (name == "oe") {
        c.mode = Mode::ExplorationOnly;
    } else if (name == "ers") {
        c.mode = Mode::Stigmergy;
    } else if (name == "erp") {
        c.mode = Mode::Protocol;
    } else if (name == "oe_random_walk") {
        c.mode = Mode::ExplorationOnly;
        c.exploration = ExplorationPolicy::RandomWalk;
    } else if (name == "ias_ss") {
        c.mode = Mode::ExplorationOnly;
        c.pheromone.a1 = 0.1;
        c.pheromone.a2 = 1000.0;
    } else {
        throw std::invalid_argument("unknown variant: " + name);
    }
}

void apply_axis(SimConfig& c, Axis axis, double value) {
    const auto whole = [&] {
        if (value != std::floor(value) || value < 0) {
            throw std::invalid_argument(std::string(to_string(axis)) + " needs a whole number");
        }
        return static_cast<int>(value);
    };
    switch (axis) {
        case Axis::Robots: c.robots.count = whole(); c.robots.starts.clear(); break;
        case Axis::Mines: c.grid.random_mines = whole(); c.grid.mines.clear(); break;
        case Axis::GridSize: c.grid.width = c.grid.height = whole(); break;
        case Axis::A1: c.pheromone.a1 = value; break;
        case Axis::A2: c.pheromone.a2 = value; break;
        case Axis::Rho: c.pheromone.rho = value; break;
    }
}

void SweepSpec::validate() const {
    if (seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
    if (values.empty()) throw std::invalid_argument("sweep needs at least one axis value");
    for (const auto& v : variants) {
        if (!is_known_variant(v)) throw std::invalid_argument("unknown variant: " + v);
    }
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> out;
    const auto t = boost::trim_copy(text);
    try {
        if (const auto dots = t.find(".."); dots != std::string::npos) {
            const auto a = boost::lexical_cast<std::uint64_t>(boost::trim_copy(t.substr(0, dots)));
            const auto b = boost::lexical_cast<std::uint64_t>(boost::trim_copy(t.substr(dots + 2)));
            if (b < a) throw std::invalid_argument("empty seed range: " + text);
            for (auto s = a; s <= b; ++s) out.push_back(s);
            return out;
        }
        std::vector<std::string> items;
        boost::split(items, t, boost::is_any_of(","));
        for (auto& item : items) {
            boost::trim(item);
            if (!item.empty()) out.push_back(boost::lexical_cast<std::uint64_t>(item));
        }
    } catch (const boost::bad_lexical_cast&) {
        throw std::invalid_argument("bad seed list: " + text);
    }
    return out;
}

namespace {

std::vector<std::uint64_t> seed_range(std::uint64_t a, std::uint64_t b) {
    std::vector<std::uint64_t> out;
    for (auto s = a; s <= b; ++s) out.push_back(s);
    return out;
}

const std::vector<double> kRobotAxis = {4, 8, 12, 16, 20, 24};

SweepSpec make(std::string name, Axis axis, std::vector<double> values, std::vector<std::string> variants,
               int grid, int robots, int mines) {
    SweepSpec s;
    s.name = std::move(name);
    s.axis = axis;
    s.values = std::move(values);
    s.variants = std::move(variants);
    s.seeds = seed_range(1, 30);
    s.base.grid.width = s.base.grid.height = grid;
    s.base.robots.count = robots;
    s.base.grid.random_mines = mines;
    apply_variant(s.base, s.variants.front());
    return s;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig5", "fig5_a2", "fig6", "fig14", "fig15", "fig16", "fig17", "fig18", "fig18_robots", "fig19",
            "ias_ss_compare"};
}

std::optional<SweepSpec> preset(const std::string& name) {
    if (name == "fig5") return make(name, Axis::A1, {0.1, 0.25, 0.5, 1.0, 2.0}, {"oe"}, 20, 8, 0);
    if (name == "fig5_a2") return make(name, Axis::A2, {0.1, 0.25, 0.5, 1.0, 2.0}, {"oe"}, 20, 8, 0);
    if (name == "fig6") return make(name, Axis::Rho, {0.1, 0.2, 0.4, 0.8}, {"oe"}, 20, 8, 0);
    if (name == "fig14") return make(name, Axis::Robots, kRobotAxis, {"oe", "ias_ss"}, 30, 4, 0);
    if (name == "fig15") return make(name, Axis::Mines, {1, 2, 3, 4, 5}, {"ers", "erp"}, 30, 16, 3);
    if (name == "fig16") return make(name, Axis::GridSize, {20, 30, 40, 50}, {"ers", "erp"}, 30, 16, 3);
    if (name == "fig17") return make(name, Axis::Robots, kRobotAxis, {"ers", "erp"}, 30, 16, 3);
    if (name == "fig18") return make(name, Axis::Mines, {1, 2, 3, 4, 5}, {"erp"}, 30, 16, 3);
    if (name == "fig18_robots") return make(name, Axis::Robots, kRobotAxis, {"erp"}, 30, 16, 3);
    if (name == "fig19") return make(name, Axis::GridSize, {20, 30, 40, 50}, {"erp"}, 30, 16, 3);
    if (name == "ias_ss_compare") return make(name, Axis::Robots, kRobotAxis, {"oe", "ias_ss"}, 20, 4, 0);
    return std::nullopt;
}

SweepSpec load_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read sweep file: " + path);
    return parse_sweep(in, path);
}

SweepSpec parse_sweep(std::istream& in, const std::string& fallback_name) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(e.what());
    }
    const auto sweep = tree.get_child_optional("sweep");
    if (!sweep) throw ConfigError("sweep file has no [sweep] section");
    SweepSpec spec;
    spec.name = boost::trim_copy(sweep->get<std::string>("name", fallback_name));
    for (const auto& [key, value] : *sweep) {
        const auto v = value.data();
        if (key == "name") continue;
        if (key == "axis") {
            if (!parse_axis(boost::trim_copy(v), spec.axis)) throw ConfigError("unknown axis: " + v);
        } else if (key == "values") {
            std::vector<std::string> items;
            boost::split(items, v, boost::is_any_of(","));
            for (auto& item : items) {
                boost::trim(item);
                if (item.empty()) continue;
                try {
                    spec.values.push_back(boost::lexical_cast<double>(item));
                } catch (const boost::bad_lexical_cast&) {
                    throw ConfigError("bad axis value: " + item);
                }
            }
        } else if (key == "variants") {
            std::vector<std::string> items;
            boost::split(items, v, boost::is_any_of(","));
            for (auto& item : items) {
                boost::trim(item);
                if (!item.empty()) spec.variants.push_back(item);
            }
        } else if (key == "seeds") {
            try {
                spec.seeds = parse_seeds(v);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else {
            throw ConfigError("unknown key: sweep." + key);
        }
    }
    tree.erase("sweep");
    std::ostringstream rest;
    pt::write_ini(rest, tree);
    std::istringstream base(rest.str());
    spec.base = parse_config(base);
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

std::string to_sweep_ini(const SweepSpec& spec) {
    std::ostringstream os;
    os << "[sweep]\nname = " << spec.name << "\naxis = " << to_string(spec.axis) << "\nvalues = ";
    for (std::size_t i = 0; i < spec.values.size(); ++i) os << (i ? ", " : "") << format_double(spec.values[i]);
    os << "\nvariants = ";
    for (std::size_t i = 0; i < spec.variants.size(); ++i) os << (i ? ", " : "") << spec.variants[i];
    os << "\nseeds = ";
    bool contiguous = !spec.seeds.empty();
    for (std::size_t i = 1; i < spec.seeds.size(); ++i) contiguous = contiguous && spec.seeds[i] == spec.seeds[i - 1] + 1;
    if (contiguous && spec.seeds.size() > 1) {
        os << spec.seeds.front() << ".." << spec.seeds.back();
    } else {
        for (std::size_t i = 0; i < spec.seeds.size(); ++i) os << (i ? ", " : "") << spec.seeds[i];
    }
    os << "\n\n" << to_ini(spec.base);
    return os.str();
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int parallel) {
    spec.validate();
    const std::vector<std::string> variants =
        spec.variants.empty() ? std::vector<std::string>{std::string(to_string(spec.base.mode))} : spec.variants;

    std::vector<SweepRow> rows;
    for (const auto& variant : variants) {
        for (double value : spec.values) {
            for (auto seed : spec.seeds) rows.push_back({variant, value, seed, std::nullopt, {}});
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            SweepRow& row = rows[i];
            try {
                SimConfig c = spec.base;
                apply_variant(c, row.variant);
                apply_axis(c, spec.axis, row.value);
                c.seed = row.seed;
                RunOptions options;
                options.record_events = false;
                row.metrics = evaluate(run(c, options));
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const int threads = std::max(1, std::min<int>(parallel, static_cast<int>(rows.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

std::string sweep_csv_header() { return csv_header() + ",sweep,variant,axis,value,error"; }

void write_sweep_rows(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    out << sweep_csv_header() << '\n';
    for (const auto& row : rows) {
        if (row.metrics) {
            out << csv_row(*row.metrics);
        } else {
            // Failed run: identifying fields only.
            out << ",,,,," << row.seed << ",,,,,,,,";
        }
        std::string error = row.error;
        std::replace(error.begin(), error.end(), ',', ';');
        std::replace(error.begin(), error.end(), '\n', ' ');
        out << ',' << spec.name << ',' << row.variant << ',' << to_string(spec.axis) << ','
            << format_double(row.value) << ',' << error << '\n';
    }
}

void write_sweep_summary(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    static const std::vector<std::string> fields = {"totalSteps", "objective", "overhead_total", "coverage", "capped"};
    out << "sweep,variant,axis,value,runs,failures";
    for (const auto& f : fields) out << ',' << f << "_mean," << f << "_std," << f << "_ci95";
    out << '\n';
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        std::vector<MetricsRecord> ok;
        std::size_t failures = 0;
        while (j < rows.size() && rows[j].variant == rows[i].variant && rows[j].value == rows[i].value) {
            if (rows[j].metrics) {
                ok.push_back(*rows[j].metrics);
            } else {
                ++failures;
            }
            ++j;
        }
        out << spec.name << ',' << rows[i].variant << ',' << to_string(spec.axis) << ',' << format_double(rows[i].value)
            << ',' << ok.size() << ',' << failures;
        if (ok.size() >= 2) {
            const auto summary = aggregate(ok);
            for (const auto& f : fields) {
                const auto& s = summary.at(f);
                out << ',' << format_double(s.mean) << ',' << format_double(s.stddev) << ',' << format_double(s.ci95);
            }
        } else if (ok.size() == 1) {
            const auto& m = ok.front();
            const double one[] = {static_cast<double>(m.total_steps), m.objective,
                                  static_cast<double>(m.overhead_total), m.coverage, m.capped ? 1.0 : 0.0};
            for (double v : one) out << ',' << format_double(v) << ",,";
        } else {
            for (std::size_t k = 0; k < fields.size(); ++k) out << ",,,";
        }
        out << '\n';
        i = j;
    }
}

}  // namespace atrc
