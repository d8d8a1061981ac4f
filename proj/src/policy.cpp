#include "atrc/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace atrc {

void MoveScoreParams::validate() const {
    if (!std::isfinite(phi) || phi < 0.0) throw std::invalid_argument("phi must be finite and >= 0");
    if (!std::isfinite(lambda) || lambda < 0.0) throw std::invalid_argument("lambda must be finite and >= 0");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be > 0");
}

std::vector<ScoredCell> move_scores(const PheromoneField& field, PheromoneKind kind,
                                    std::span<const CellCoord> candidates,
                                    const MoveScoreParams& params,
                                    const HeuristicFn& heuristic) {
    if (candidates.empty()) throw std::invalid_argument("move_scores needs at least one candidate");

    std::vector<ScoredCell> out;
    out.reserve(candidates.size());
    double total = 0.0;
    for (const auto& c : candidates) {
        const double x = field.sense(kind, c);
        const double eta = heuristic ? heuristic(c) : params.eta;
        const double numerator = std::pow(x, params.phi) * std::pow(eta, params.lambda);
        out.push_back({c, numerator});
        total += numerator;
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        const double uniform = 1.0 / static_cast<double>(out.size());
        for (auto& s : out) s.score = uniform;
        return out;
    }
    for (auto& s : out) s.score /= total;
    return out;
}

namespace {

template <typename Better>
CellCoord pick_extreme(std::span<const ScoredCell> scores, RngStream& rng, Better better) {
    if (scores.empty()) throw std::invalid_argument("cannot choose from an empty score list");
    double best = scores.front().score;
    for (const auto& s : scores) {
        if (better(s.score, best)) best = s.score;
    }
    std::vector<CellCoord> ties;
    for (const auto& s : scores) {
        if (s.score == best) ties.push_back(s.cell);
    }
    if (ties.size() == 1) return ties.front();
    return ties[rng.uniform_index(ties.size())];
}

CellCoord sample_weighted(std::span<const ScoredCell> scores, const std::vector<double>& weights, RngStream& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) return scores[rng.uniform_index(scores.size())].cell;
    double u = rng.uniform01() * total;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        u -= weights[i];
        if (u < 0.0) return scores[i].cell;
    }
    return scores.back().cell;
}

}  // namespace

CellCoord choose_exploration_cell(std::span<const ScoredCell> scores, RngStream& rng) {
    return pick_extreme(scores, rng, [](double a, double b) { return a < b; });
}

CellCoord choose_recruitment_cell(std::span<const ScoredCell> scores, RngStream& rng) {
    return pick_extreme(scores, rng, [](double a, double b) { return a > b; });
}

CellCoord sample_exploration_cell(std::span<const ScoredCell> scores, RngStream& rng) {
    if (scores.empty()) throw std::invalid_argument("cannot choose from an empty score list");
    if (scores.size() == 1) return scores.front().cell;
    std::vector<double> weights;
    weights.reserve(scores.size());
    for (const auto& s : scores) weights.push_back(1.0 - s.score);
    return sample_weighted(scores, weights, rng);
}

CellCoord sample_recruitment_cell(std::span<const ScoredCell> scores, RngStream& rng) {
    if (scores.empty()) throw std::invalid_argument("cannot choose from an empty score list");
    std::vector<double> weights;
    weights.reserve(scores.size());
    for (const auto& s : scores) weights.push_back(s.score);
    return sample_weighted(scores, weights, rng);
}

CellCoord choose_approach_cell(std::span<const CellCoord> candidates, CellCoord target, RngStream& rng) {
    if (candidates.empty()) throw std::invalid_argument("cannot approach with no candidates");
    int best_cheb = chebyshev(candidates.front(), target);
    double best_sq = squared_distance(candidates.front(), target);
    for (const auto& c : candidates) {
        const int ch = chebyshev(c, target);
        const double sq = squared_distance(c, target);
        if (ch < best_cheb || (ch == best_cheb && sq < best_sq)) {
            best_cheb = ch;
            best_sq = sq;
        }
    }
    std::vector<CellCoord> ties;
    for (const auto& c : candidates) {
        if (chebyshev(c, target) == best_cheb && squared_distance(c, target) == best_sq) ties.push_back(c);
    }
    if (ties.size() == 1) return ties.front();
    return ties[rng.uniform_index(ties.size())];
}

}  // namespace atrc
