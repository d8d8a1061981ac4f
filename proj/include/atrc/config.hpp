#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "atrc/engine.hpp"

namespace atrc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario files are INI text:
//
//   [grid]      width, height, obstacles = "x,y; x,y"
//   [mines]     count (random), cells = "x,y; ..."
//   [robots]    count, starts = "x,y; ..."
//   [run]       mode = oe|ers|erp, seed, max_steps,
//               exploration = pheromone|random_walk, static_foragers
//   [pheromone] delta_tau0, a1, a2, rho, sensing_radius,
//               noise_mode = per_cell|per_deposit
//   [policy]    phi, lambda, eta, stochastic
//   [network]   transmission_radius, hello_period, hello_timeout, loss_prob
//   [protocol]  r_min, reply_wait, arrival_timeout, disarm_time, gamma_e,
//               gamma_r, abandon_factor, coordinator_counts,
//               recruited_deposit, request_hops
//   [stigmergy] theta_threshold
//   [team]      patience, cooldown
//
// Missing keys keep their defaults; unknown sections or keys are errors.
// Throws ConfigError.
SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::string& path);

// Writes every key, so parse_config(to_ini(c)) reproduces c.
std::string to_ini(const SimConfig& config);

std::vector<CellCoord> parse_cells(const std::string& text);
std::string format_cells(const std::vector<CellCoord>& cells);

}  // namespace atrc
