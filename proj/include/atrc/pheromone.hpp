#pragma once

#include <functional>
#include <vector>

#include "atrc/types.hpp"

namespace atrc {

enum class PheromoneKind { Repellent, Attractive };

// Whether the noise term is drawn once per cell reached by a deposit or once
// per deposit (shared by every cell of that deposit).
enum class NoiseMode { PerCell, PerDeposit };

struct PheromoneParams {
    double delta_tau0 = 2.0;  // peak amount at the depositor's cell
    double a1 = 0.5;          // distance decay
    double a2 = 0.5;          // noise scale
    double rho = 0.2;         // evaporation rate
    double sensing_radius = 4.0;
    NoiseMode noise_mode = NoiseMode::PerCell;

    // Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

// Amount laid at Euclidean distance r from the depositor:
// max(0, delta_tau0 * exp(-r / a1) - eps / a2) inside the sensing radius,
// zero outside.
double deposit_kernel(const PheromoneParams& params, double r, double eps);

struct Deposit {
    PheromoneKind kind = PheromoneKind::Repellent;
    CellCoord center;
};

// Supplies noise draws in [0, 1). Called once per cell in row-major order
// over the clipped disk (PerCell) or once per deposit (PerDeposit).
using NoiseSource = std::function<double()>;

// Dense repellent (tau) and attractive (theta) fields over an m x n grid.
class PheromoneField {
public:
    PheromoneField(int width, int height, PheromoneParams params);

    int width() const { return width_; }
    int height() const { return height_; }
    const PheromoneParams& params() const { return params_; }

    double sense(PheromoneKind kind, CellCoord c) const { return layer(kind)[index(c)]; }
    const std::vector<double>& layer(PheromoneKind kind) const {
        return kind == PheromoneKind::Repellent ? tau_ : theta_;
    }

    void deposit_radial(PheromoneKind kind, CellCoord center, const NoiseSource& noise);
    // x <- x - rho * x on both fields.
    void evaporate();
    // Evaporate the previous amounts, then add this step's deposits in order.
    // The noise source is invoked with the index of the deposit being laid.
    void step_update(const std::vector<Deposit>& deposits,
                     const std::function<NoiseSource(std::size_t)>& noise_for);

    // Test hook: overwrite one cell.
    void set(PheromoneKind kind, CellCoord c, double value);

private:
    std::size_t index(CellCoord c) const { return static_cast<std::size_t>(c.y) * width_ + c.x; }
    std::vector<double>& layer_mut(PheromoneKind kind) {
        return kind == PheromoneKind::Repellent ? tau_ : theta_;
    }

    int width_;
    int height_;
    PheromoneParams params_;
    std::vector<double> tau_;
    std::vector<double> theta_;
};

}  // namespace atrc
