#include "atrc/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace atrc {

namespace pt = boost::property_tree;

namespace {

template <typename T>
T as(const std::string& key, const std::string& value) {
    try {
        return boost::lexical_cast<T>(boost::trim_copy(value));
    } catch (const boost::bad_lexical_cast&) {
        throw ConfigError("bad value for " + key + ": '" + value + "'");
    }
}

template <>
bool as<bool>(const std::string& key, const std::string& value) {
    const auto v = boost::to_lower_copy(boost::trim_copy(value));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("bad boolean for " + key + ": '" + value + "'");
}

using Setter = std::function<void(SimConfig&, const std::string& key, const std::string& value)>;

template <typename T, typename F>
Setter set(F field) {
    return [field](SimConfig& c, const std::string& key, const std::string& value) {
        field(c) = as<T>(key, value);
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"grid.width", set<int>([](SimConfig& c) -> int& { return c.grid.width; })},
        {"grid.height", set<int>([](SimConfig& c) -> int& { return c.grid.height; })},
        {"grid.obstacles", [](SimConfig& c, const std::string&, const std::string& v) { c.grid.obstacles = parse_cells(v); }},
        {"mines.count", set<int>([](SimConfig& c) -> int& { return c.grid.random_mines; })},
        {"mines.cells", [](SimConfig& c, const std::string&, const std::string& v) { c.grid.mines = parse_cells(v); }},
        {"robots.count", set<int>([](SimConfig& c) -> int& { return c.robots.count; })},
        {"robots.starts", [](SimConfig& c, const std::string&, const std::string& v) { c.robots.starts = parse_cells(v); }},
        {"run.mode", [](SimConfig& c, const std::string& k, const std::string& v) {
             if (!parse_mode(boost::trim_copy(v), c.mode)) throw ConfigError("bad value for " + k + ": '" + v + "'");
         }},
        {"run.seed", set<std::uint64_t>([](SimConfig& c) -> std::uint64_t& { return c.seed; })},
        {"run.max_steps", set<Step>([](SimConfig& c) -> Step& { return c.max_steps; })},
        {"run.exploration", [](SimConfig& c, const std::string& k, const std::string& v) {
             const auto t = boost::to_lower_copy(boost::trim_copy(v));
             if (t == "pheromone") c.exploration = ExplorationPolicy::Pheromone;
             else if (t == "random_walk") c.exploration = ExplorationPolicy::RandomWalk;
             else throw ConfigError("bad value for " + k + ": '" + v + "'");
         }},
        {"run.static_foragers", set<bool>([](SimConfig& c) -> bool& { return c.static_foragers; })},
        {"pheromone.delta_tau0", set<double>([](SimConfig& c) -> double& { return c.pheromone.delta_tau0; })},
        {"pheromone.a1", set<double>([](SimConfig& c) -> double& { return c.pheromone.a1; })},
        {"pheromone.a2", set<double>([](SimConfig& c) -> double& { return c.pheromone.a2; })},
        {"pheromone.rho", set<double>([](SimConfig& c) -> double& { return c.pheromone.rho; })},
        {"pheromone.sensing_radius", set<double>([](SimConfig& c) -> double& { return c.pheromone.sensing_radius; })},
        {"pheromone.noise_mode", [](SimConfig& c, const std::string& k, const std::string& v) {
             const auto t = boost::to_lower_copy(boost::trim_copy(v));
             if (t == "per_cell") c.pheromone.noise_mode = NoiseMode::PerCell;
             else if (t == "per_deposit") c.pheromone.noise_mode = NoiseMode::PerDeposit;
             else throw ConfigError("bad value for " + k + ": '" + v + "'");
         }},
        {"policy.phi", set<double>([](SimConfig& c) -> double& { return c.policy.phi; })},
        {"policy.lambda", set<double>([](SimConfig& c) -> double& { return c.policy.lambda; })},
        {"policy.eta", set<double>([](SimConfig& c) -> double& { return c.policy.eta; })},
        {"policy.stochastic", set<bool>([](SimConfig& c) -> bool& { return c.policy.stochastic; })},
        {"network.transmission_radius", set<double>([](SimConfig& c) -> double& { return c.net.transmission_radius; })},
        {"network.hello_period", set<int>([](SimConfig& c) -> int& { return c.net.hello_period; })},
        {"network.hello_timeout", set<int>([](SimConfig& c) -> int& { return c.net.hello_timeout; })},
        {"network.loss_prob", set<double>([](SimConfig& c) -> double& { return c.net.loss_prob; })},
        {"protocol.r_min", set<int>([](SimConfig& c) -> int& { return c.protocol.r_min; })},
        {"protocol.reply_wait", set<int>([](SimConfig& c) -> int& { return c.protocol.reply_wait; })},
        {"protocol.arrival_timeout", set<int>([](SimConfig& c) -> int& { return c.protocol.arrival_timeout; })},
        {"protocol.disarm_time", set<int>([](SimConfig& c) -> int& { return c.protocol.disarm_time; })},
        {"protocol.gamma_e", set<double>([](SimConfig& c) -> double& { return c.protocol.gamma_e; })},
        {"protocol.gamma_r", set<double>([](SimConfig& c) -> double& { return c.protocol.gamma_r; })},
        {"protocol.abandon_factor", set<double>([](SimConfig& c) -> double& { return c.protocol.abandon_factor; })},
        {"protocol.coordinator_counts", set<bool>([](SimConfig& c) -> bool& { return c.protocol.coordinator_counts; })},
        {"protocol.recruited_deposit", set<bool>([](SimConfig& c) -> bool& { return c.protocol.recruited_deposit; })},
        {"protocol.request_hops", set<int>([](SimConfig& c) -> int& { return c.protocol.request_hops; })},
        {"stigmergy.theta_threshold", set<double>([](SimConfig& c) -> double& { return c.stigmergy.theta_threshold; })},
        {"team.patience", set<int>([](SimConfig& c) -> int& { return c.team.patience; })},
        {"team.cooldown", set<int>([](SimConfig& c) -> int& { return c.team.cooldown; })},
    };
    return table;
}

}  // namespace

std::vector<CellCoord> parse_cells(const std::string& text) {
    std::vector<CellCoord> out;
    std::vector<std::string> items;
    boost::split(items, text, boost::is_any_of(";"));
    for (auto& item : items) {
        boost::trim(item);
        if (item.empty()) continue;
        std::vector<std::string> xy;
        boost::split(xy, item, boost::is_any_of(","));
        if (xy.size() != 2) throw ConfigError("bad cell '" + item + "', expected x,y");
        out.push_back({as<int>("cell", xy[0]), as<int>("cell", xy[1])});
    }
    return out;
}

std::string format_cells(const std::vector<CellCoord>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += "; ";
        out += std::to_string(cells[i].x) + "," + std::to_string(cells[i].y);
    }
    return out;
}

SimConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(e.what());
    }
    SimConfig config;
    const auto& table = setters();
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) throw ConfigError("key outside a section: " + section);
        for (const auto& [key, value] : body) {
            const std::string name = section + "." + key;
            const auto it = table.find(name);
            if (it == table.end()) throw ConfigError("unknown key: " + name);
            it->second(config, name, value.data());
        }
    }
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return config;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    return parse_config(in);
}

std::string to_ini(const SimConfig& c) {
    std::ostringstream os;
    const auto b = [](bool v) { return v ? "true" : "false"; };
    os << "[grid]\nwidth = " << c.grid.width << "\nheight = " << c.grid.height
       << "\nobstacles = " << format_cells(c.grid.obstacles) << "\n\n";
    os << "[mines]\ncount = " << c.grid.random_mines << "\ncells = " << format_cells(c.grid.mines) << "\n\n";
    os << "[robots]\ncount = " << c.robots.count << "\nstarts = " << format_cells(c.robots.starts) << "\n\n";
    os << "[run]\nmode = " << to_string(c.mode) << "\nseed = " << c.seed << "\nmax_steps = " << c.max_steps
       << "\nexploration = " << (c.exploration == ExplorationPolicy::Pheromone ? "pheromone" : "random_walk")
       << "\nstatic_foragers = " << b(c.static_foragers) << "\n\n";
    os << "[pheromone]\ndelta_tau0 = " << format_double(c.pheromone.delta_tau0) << "\na1 = " << format_double(c.pheromone.a1)
       << "\na2 = " << format_double(c.pheromone.a2) << "\nrho = " << format_double(c.pheromone.rho)
       << "\nsensing_radius = " << format_double(c.pheromone.sensing_radius) << "\nnoise_mode = "
       << (c.pheromone.noise_mode == NoiseMode::PerCell ? "per_cell" : "per_deposit") << "\n\n";
    os << "[policy]\nphi = " << format_double(c.policy.phi) << "\nlambda = " << format_double(c.policy.lambda) << "\neta = " << format_double(c.policy.eta)
       << "\nstochastic = " << b(c.policy.stochastic) << "\n\n";
    os << "[network]\ntransmission_radius = " << format_double(c.net.transmission_radius) << "\nhello_period = " << c.net.hello_period
       << "\nhello_timeout = " << c.net.hello_timeout << "\nloss_prob = " << format_double(c.net.loss_prob) << "\n\n";
    os << "[protocol]\nr_min = " << c.protocol.r_min << "\nreply_wait = " << c.protocol.reply_wait
       << "\narrival_timeout = " << c.protocol.arrival_timeout << "\ndisarm_time = " << c.protocol.disarm_time
       << "\ngamma_e = " << format_double(c.protocol.gamma_e) << "\ngamma_r = " << format_double(c.protocol.gamma_r)
       << "\nabandon_factor = " << format_double(c.protocol.abandon_factor)
       << "\ncoordinator_counts = " << b(c.protocol.coordinator_counts)
       << "\nrecruited_deposit = " << b(c.protocol.recruited_deposit)
       << "\nrequest_hops = " << c.protocol.request_hops << "\n\n";
    os << "[stigmergy]\ntheta_threshold = " << format_double(c.stigmergy.theta_threshold) << "\n\n";
    os << "[team]\npatience = " << c.team.patience << "\ncooldown = " << c.team.cooldown << "\n";
    return os.str();
}

}  // namespace atrc
