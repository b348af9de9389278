#include "pbp/render.hpp"

#include <cstdio>
#include <stdexcept>

namespace pbp {

std::string render_p6(const Grid& initial, const Grid& final_grid,
                      const RenderPalette& palette) {
    if (initial.width() != final_grid.width() || initial.height() != final_grid.height())
        throw std::invalid_argument("render_p6: grid dimensions differ");

    const int w = initial.width(), h = initial.height();
    char header[64];
    int header_len = std::snprintf(header, sizeof header, "P6\n%d %d\n255\n", w, h);
    std::string out(header, size_t(header_len));
    out.reserve(out.size() + size_t(w) * size_t(h) * 3);

    for (int y = h - 1; y >= 0; --y) {
        for (int x = 0; x < w; ++x) {
            RgbColor c;
            if (initial.occupied(x, y)) c = palette.initial_occupied;
            else if (final_grid.occupied(x, y)) c = palette.eventually_occupied;
            else if (initial.closed(x, y)) c = palette.closed;
            else c = palette.never_occupied_open;
            out.push_back(char(c.r));
            out.push_back(char(c.g));
            out.push_back(char(c.b));
        }
    }
    return out;
}

}  // namespace pbp
