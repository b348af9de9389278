#pragma once

#include <cstdint>
#include <string>

#include "pbp/grid.hpp"

namespace pbp {

struct RgbColor {
    uint8_t r = 0, g = 0, b = 0;
    bool operator==(const RgbColor&) const = default;
};

/// Figure palette: black for initially occupied cells, grey for cells
/// occupied only in the final configuration, red for closed cells, white
/// for open cells that never get occupied.
struct RenderPalette {
    RgbColor initial_occupied{0, 0, 0};
    RgbColor eventually_occupied{128, 128, 128};
    RgbColor closed{255, 0, 0};
    RgbColor never_occupied_open{255, 255, 255};
};

/// Binary portable pixmap (P6) bytes, one pixel per cell, row 0 of the image
/// being the top grid row (highest y). `final` must be the closure of
/// `initial` (caller contract); the grids must have equal dimensions
/// (std::invalid_argument otherwise). Initially-occupied takes precedence
/// over eventually-occupied.
std::string render_p6(const Grid& initial, const Grid& final_grid,
                      const RenderPalette& palette = {});

}  // namespace pbp
