#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pbp/grid.hpp"

namespace pbp {

/// Initialization law: each cell is independently closed with probability q,
/// occupied with probability p, open otherwise. Requires p, q >= 0 and
/// p + q <= 1.
struct PollutionParams {
    double p = 0.0;
    double q = 0.0;
    uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

enum class BoundaryCondition : uint8_t { Free = 0, OccupiedRing = 1 };

/// Seeded i.i.d. configuration. One uniform u per cell (counter = row-major
/// cell index): closed iff u < q, occupied iff u >= 1 - p. The bands cannot
/// overlap when p + q <= 1, and raising q only adds closed cells for the
/// same uniforms, which is what the coupled samplers rely on. OccupiedRing
/// forces the outermost frame to occupied after sampling.
Grid sample(int w, int h, const PollutionParams& params, BoundaryCondition bc);

/// Grids for several q values driven by the same per-cell uniforms: the
/// occupied sets are identical and closed sets grow with q.
std::vector<Grid> sample_coupled(int w, int h, double p, std::span<const double> q_list,
                                 uint64_t seed, BoundaryCondition bc);

}  // namespace pbp
