#include "atrc/metrics.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace atrc {

MetricsRecord evaluate(const RunLog& log) {
    MetricsRecord r;
    r.mode = log.mode;
    r.robots = log.robots;
    r.mines = log.mines;
    r.width = log.width;
    r.height = log.height;
    r.seed = log.seed;
    r.total_steps = log.total_steps;
    r.capped = log.capped();
    r.coverage = log.coverage;

    for (auto n : log.distinct_cells) r.exploration_term += static_cast<double>(n);
    for (const auto& t : log.tasks) {
        if (!t.completed) continue;
        for (const auto& rec : t.recruits) r.coordination_term += static_cast<double>(rec.end - rec.start);
    }
    r.objective = r.exploration_term + r.coordination_term;

    for (auto k : kControlKinds) {
        r.overhead[kind_index(k)] = log.transmissions[kind_index(k)];
        r.overhead_total += log.transmissions[kind_index(k)];
    }

    const long long free_cells =
        static_cast<long long>(log.width) * log.height - static_cast<long long>(log.obstacles.size());
    long long visited = 0;
    for (int v : log.visit_counts) visited += v > 0 ? 1 : 0;
    r.audit.unvisited_cells = free_cells - visited;
    r.audit.full_coverage = r.audit.unvisited_cells == 0;
    for (const auto& m : log.mine_outcomes) {
        if (m.status != MineStatus::Disarmed) continue;
        ++r.audit.mines_disarmed;
        if (static_cast<int>(m.team.size()) != log.r_min) r.audit.wrong_team_size.push_back(m.mine);
    }
    r.mines_disarmed = r.audit.mines_disarmed;
    return r;
}

Summary summarize(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("at least two records are required");
    Summary s;
    s.n = values.size();
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(s.n);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    const boost::math::students_t dist(static_cast<double>(s.n - 1));
    s.ci95 = boost::math::quantile(boost::math::complement(dist, 0.025)) * s.stddev / std::sqrt(static_cast<double>(s.n));
    return s;
}

std::map<std::string, Summary> aggregate(std::span<const MetricsRecord> records) {
    if (records.size() < 2) throw std::invalid_argument("at least two records are required");
    const std::vector<std::pair<std::string, std::function<double(const MetricsRecord&)>>> fields = {
        {"totalSteps", [](const MetricsRecord& r) { return static_cast<double>(r.total_steps); }},
        {"objective", [](const MetricsRecord& r) { return r.objective; }},
        {"explorationTerm", [](const MetricsRecord& r) { return r.exploration_term; }},
        {"coordinationTerm", [](const MetricsRecord& r) { return r.coordination_term; }},
        {"overhead_total", [](const MetricsRecord& r) { return static_cast<double>(r.overhead_total); }},
        {"coverage", [](const MetricsRecord& r) { return r.coverage; }},
        {"minesDisarmed", [](const MetricsRecord& r) { return static_cast<double>(r.mines_disarmed); }},
        {"capped", [](const MetricsRecord& r) { return r.capped ? 1.0 : 0.0; }},
    };
    std::map<std::string, Summary> out;
    std::vector<double> values(records.size());
    for (const auto& [name, get] : fields) {
        for (std::size_t i = 0; i < records.size(); ++i) values[i] = get(records[i]);
        out[name] = summarize(values);
    }
    return out;
}

std::string overhead_by_kind(const PacketCounts& c) {
    static constexpr const char* names[] = {"hello", "rtfant", "rtbant", "rfant", "rbant", "lp"};
    std::ostringstream os;
    bool first = true;
    for (auto k : kControlKinds) {
        if (!first) os << ';';
        first = false;
        os << names[kind_index(k)] << ':' << c[kind_index(k)];
    }
    return os.str();
}

std::string csv_header() {
    return "mode,robots,mines,m,n,seed,totalSteps,objective,explorationTerm,coordinationTerm,"
           "overhead_total,overhead_by_kind,coverage,capped";
}

std::string csv_row(const MetricsRecord& r) {
    std::ostringstream os;
    os << to_string(r.mode) << ',' << r.robots << ',' << r.mines << ',' << r.width << ',' << r.height << ','
       << r.seed << ',' << r.total_steps << ',' << format_double(r.objective) << ',' << format_double(r.exploration_term) << ','
       << format_double(r.coordination_term) << ',' << r.overhead_total << ',' << overhead_by_kind(r.overhead) << ','
       << format_double(r.coverage) << ',' << (r.capped ? 1 : 0);
    return os.str();
}

}  // namespace atrc
