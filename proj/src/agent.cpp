#include "atrc/agent.hpp"

#include <algorithm>

namespace atrc {

std::string_view to_string(RobotState s) {
    switch (s) {
        case RobotState::Forager: return "forager";
        case RobotState::Coordinator: return "coordinator";
        case RobotState::Recruited: return "recruited";
        case RobotState::Waiting: return "waiting";
        case RobotState::Execution: return "execution";
    }
    return "?";
}

bool is_valid_transition(RobotState from, RobotState to) {
    using S = RobotState;
    switch (from) {
        case S::Forager: return to == S::Coordinator || to == S::Recruited;
        case S::Recruited: return to == S::Forager || to == S::Coordinator || to == S::Waiting;
        case S::Waiting: return to == S::Execution || to == S::Forager;
        case S::Coordinator: return to == S::Execution || to == S::Forager;
        case S::Execution: return to == S::Forager;
    }
    return false;
}

namespace {

bool smells_theta(const PheromoneField& field, const std::vector<CellCoord>& candidates, double threshold) {
    return std::any_of(candidates.begin(), candidates.end(), [&](CellCoord c) {
        return field.sense(PheromoneKind::Attractive, c) >= threshold;
    });
}

CellCoord explore_cell(const std::vector<CellCoord>& candidates, const PheromoneField& field,
                       const MoveSettings& settings, RngStream& rng) {
    if (settings.exploration == ExplorationPolicy::RandomWalk) {
        return candidates[rng.uniform_index(candidates.size())];
    }
    const auto scores = move_scores(field, PheromoneKind::Repellent, candidates, settings.scores);
    return settings.scores.stochastic ? sample_exploration_cell(scores, rng)
                                      : choose_exploration_cell(scores, rng);
}

CellCoord follow_theta(const std::vector<CellCoord>& candidates, const PheromoneField& field,
                       const MoveSettings& settings, RngStream& rng) {
    const auto scores = move_scores(field, PheromoneKind::Attractive, candidates, settings.scores);
    return settings.scores.stochastic ? sample_recruitment_cell(scores, rng)
                                      : choose_recruitment_cell(scores, rng);
}

}  // namespace

MoveDecision decide_move(const Robot& robot, const GridWorld& world, const PheromoneField& field,
                         const MoveSettings& settings, Step now, RngStream& rng) {
    MoveDecision d;
    if (robot.state != RobotState::Forager && robot.state != RobotState::Recruited) return d;

    const auto candidates = world.neighbors(robot.position);
    const bool stigmergy = settings.mode == Mode::Stigmergy;

    if (robot.state == RobotState::Forager) {
        if (stigmergy && now >= robot.rest_until &&
            smells_theta(field, candidates, settings.theta_threshold)) {
            d.new_state = RobotState::Recruited;
            d.intent = MoveIntent::FollowTheta;
            d.next = follow_theta(candidates, field, settings, rng);
            return d;
        }
        if (settings.static_foragers || candidates.empty()) return d;
        d.next = explore_cell(candidates, field, settings, rng);
        return d;
    }

    // Recruited.
    if (stigmergy) {
        if (!candidates.empty() && smells_theta(field, candidates, settings.theta_threshold)) {
            d.intent = MoveIntent::FollowTheta;
            d.next = follow_theta(candidates, field, settings, rng);
            return d;
        }
        // Trail lost: back to exploring.
        d.new_state = RobotState::Forager;
        if (!candidates.empty() && !settings.static_foragers) d.next = explore_cell(candidates, field, settings, rng);
        return d;
    }

    if (robot.assignment) {
        const auto& a = robot.assignment->target;
        const double distance = euclidean(robot.position, a);
        if (distance > settings.abandon_factor * std::max(1.0, robot.assignment->initial_distance)) {
            d.new_state = RobotState::Forager;
            if (!candidates.empty() && !settings.static_foragers) d.next = explore_cell(candidates, field, settings, rng);
            return d;
        }
        if (has_arrived(robot.position, a) || candidates.empty()) return d;
        d.intent = MoveIntent::Approach;
        d.next = choose_approach_cell(candidates, a, rng);
    }
    return d;
}

void order_recruitment_requests(std::vector<Packet>& requests, CellCoord position) {
    std::stable_sort(requests.begin(), requests.end(), [&](const Packet& a, const Packet& b) {
        const double da = squared_distance(position, a.target_cell);
        const double db = squared_distance(position, b.target_cell);
        if (da != db) return da < db;
        if (a.task_id != b.task_id) return a.task_id < b.task_id;
        return a.coordinator < b.coordinator;
    });
}

}  // namespace atrc
