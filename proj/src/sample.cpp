#include "pbp/sample.hpp"

#include <stdexcept>

#include "pbp/rng.hpp"

namespace pbp {

void PollutionParams::validate() const {
    if (!(p >= 0.0) || !(q >= 0.0) || !(p + q <= 1.0))
        throw std::invalid_argument("PollutionParams: need p >= 0, q >= 0, p + q <= 1");
}

namespace {

void decorate(Grid& g, BoundaryCondition bc) {
    if (bc != BoundaryCondition::OccupiedRing) return;
    const int w = g.width(), h = g.height();
    for (int x = 0; x < w; ++x) {
        g.set(x, 0, CellState::Occupied);
        g.set(x, h - 1, CellState::Occupied);
    }
    for (int y = 0; y < h; ++y) {
        g.set(0, y, CellState::Occupied);
        g.set(w - 1, y, CellState::Occupied);
    }
}

}  // namespace

Grid sample(int w, int h, const PollutionParams& params, BoundaryCondition bc) {
    params.validate();
    Grid g(w, h);
    uint64_t counter = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x, ++counter) {
            double u = uniform_at(params.seed, counter);
            if (u < params.q) g.set(x, y, CellState::Closed);
            else if (u >= 1.0 - params.p) g.set(x, y, CellState::Occupied);
        }
    }
    decorate(g, bc);
    return g;
}

std::vector<Grid> sample_coupled(int w, int h, double p, std::span<const double> q_list,
                                 uint64_t seed, BoundaryCondition bc) {
    for (double q : q_list) PollutionParams{p, q, seed}.validate();
    std::vector<Grid> grids(q_list.size(), Grid(w, h));
    uint64_t counter = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x, ++counter) {
            double u = uniform_at(seed, counter);
            bool occ = u >= 1.0 - p;
            for (size_t i = 0; i < q_list.size(); ++i) {
                if (u < q_list[i]) grids[i].set(x, y, CellState::Closed);
                else if (occ) grids[i].set(x, y, CellState::Occupied);
            }
        }
    }
    for (Grid& g : grids) decorate(g, bc);
    return grids;
}

}  // namespace pbp
