#include "atrc/pheromone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace atrc {

void PheromoneParams::validate() const {
    if (!(delta_tau0 > 0.0)) throw std::invalid_argument("delta_tau0 must be > 0");
    if (!(a1 > 0.0)) throw std::invalid_argument("a1 must be > 0");
    if (!(a2 > 0.0)) throw std::invalid_argument("a2 must be > 0");
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0, 1]");
    if (!(sensing_radius > 0.0)) throw std::invalid_argument("sensing radius must be > 0");
}

double deposit_kernel(const PheromoneParams& params, double r, double eps) {
    if (r > params.sensing_radius) return 0.0;
    const double amount = params.delta_tau0 * std::exp(-r / params.a1) - eps / params.a2;
    return std::max(0.0, amount);
}

PheromoneField::PheromoneField(int width, int height, PheromoneParams params)
    : width_(width), height_(height), params_(params) {
    params_.validate();
    const auto cells = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    tau_.assign(cells, 0.0);
    theta_.assign(cells, 0.0);
}

void PheromoneField::deposit_radial(PheromoneKind kind, CellCoord center, const NoiseSource& noise) {
    auto& field = layer_mut(kind);
    const double rs = params_.sensing_radius;
    const int reach = static_cast<int>(std::floor(rs));
    const int y0 = std::max(0, center.y - reach);
    const int y1 = std::min(height_ - 1, center.y + reach);
    const int x0 = std::max(0, center.x - reach);
    const int x1 = std::min(width_ - 1, center.x + reach);

    const bool per_cell = params_.noise_mode == NoiseMode::PerCell;
    const double shared_eps = per_cell ? 0.0 : noise();
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const CellCoord c{x, y};
            const double r = euclidean(center, c);
            if (r > rs) continue;
            const double eps = per_cell ? noise() : shared_eps;
            field[index(c)] += deposit_kernel(params_, r, eps);
        }
    }
}

void PheromoneField::evaporate() {
    const double rho = params_.rho;
    for (auto& v : tau_) v -= rho * v;
    for (auto& v : theta_) v -= rho * v;
}

void PheromoneField::step_update(const std::vector<Deposit>& deposits,
                                 const std::function<NoiseSource(std::size_t)>& noise_for) {
    evaporate();
    for (std::size_t i = 0; i < deposits.size(); ++i) {
        deposit_radial(deposits[i].kind, deposits[i].center, noise_for(i));
    }
}

void PheromoneField::set(PheromoneKind kind, CellCoord c, double value) {
    if (value < 0.0) throw std::invalid_argument("pheromone amounts are non-negative");
    layer_mut(kind)[index(c)] = value;
}

}  // namespace atrc
