#pragma once

#include <functional>
#include <span>
#include <vector>

#include "atrc/pheromone.hpp"
#include "atrc/rng.hpp"

namespace atrc {

struct MoveScoreParams {
    double phi = 1.0;     // pheromone exponent
    double lambda = 1.0;  // heuristic exponent
    double eta = 0.9;     // heuristic value, constant unless a per-cell hook is given
    // Sample from the score distribution instead of taking argmin/argmax.
    bool stochastic = false;

    void validate() const;
};

// Optional per-cell heuristic; when empty, params.eta is used everywhere.
using HeuristicFn = std::function<double(CellCoord)>;

struct ScoredCell {
    CellCoord cell;
    double score = 0.0;
};

// Normalised scores p(c) = x_c^phi * eta_c^lambda / sum_b x_b^phi * eta_b^lambda
// over the candidates, x being tau or theta. Uniform when every numerator is
// zero. Throws std::invalid_argument on an empty candidate list.
std::vector<ScoredCell> move_scores(const PheromoneField& field, PheromoneKind kind,
                                    std::span<const CellCoord> candidates,
                                    const MoveScoreParams& params,
                                    const HeuristicFn& heuristic = {});

// Minimum pheromone following: a lowest-score cell, exact ties broken
// uniformly with the supplied stream.
CellCoord choose_exploration_cell(std::span<const ScoredCell> scores, RngStream& rng);

// Maximum pheromone following: a highest-score cell, uniform tie-break.
CellCoord choose_recruitment_cell(std::span<const ScoredCell> scores, RngStream& rng);

// Stochastic variants. Exploration samples proportionally to (1 - p), the
// inverted distribution; recruitment samples proportionally to p.
CellCoord sample_exploration_cell(std::span<const ScoredCell> scores, RngStream& rng);
CellCoord sample_recruitment_cell(std::span<const ScoredCell> scores, RngStream& rng);

// Greedy approach toward a known target: minimises Chebyshev distance, then
// squared Euclidean distance, then breaks ties uniformly.
CellCoord choose_approach_cell(std::span<const CellCoord> candidates, CellCoord target, RngStream& rng);

}  // namespace atrc
