#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pbp {

enum class CellState : uint8_t { Open = 0, Occupied = 1, Closed = 2 };

struct Coord {
    int x = 0;
    int y = 0;
    bool operator==(const Coord&) const = default;
};

// Axis-aligned cell rectangle; w == 0 or h == 0 is the empty set.
struct Rect {
    int x0 = 0, y0 = 0, w = 0, h = 0;
    bool empty() const { return w <= 0 || h <= 0; }
    int x1() const { return x0 + w - 1; }  // inclusive
    int y1() const { return y0 + h - 1; }
    bool contains(int x, int y) const {
        return !empty() && x >= x0 && x <= x1() && y >= y0 && y <= y1();
    }
    bool contains(Coord c) const { return contains(c.x, c.y); }
    bool operator==(const Rect&) const = default;
};

Rect intersect(const Rect& a, const Rect& b);

/// Finite patch of the square lattice. Every cell is open, occupied or
/// closed; the occupied and closed planes are kept bitwise disjoint.
/// Coordinates are (x = column, y = row), y increasing northward. Cells
/// outside the grid are treated as permanently open by the dynamics.
///
/// Storage is two row-major bit-planes packed 64 cells per word.
class Grid {
public:
    Grid(int width, int height);

    int width() const { return w_; }
    int height() const { return h_; }
    int64_t cells() const { return int64_t(w_) * h_; }
    Rect bounds() const { return Rect{0, 0, w_, h_}; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < w_ && y >= 0 && y < h_;
    }
    bool in_bounds(Coord c) const { return in_bounds(c.x, c.y); }

    // Checked accessors; throw std::out_of_range on bad coordinates.
    CellState at(int x, int y) const;
    CellState at(Coord c) const { return at(c.x, c.y); }
    void set(int x, int y, CellState s);
    void set(Coord c, CellState s) { set(c.x, c.y, s); }

    // Unchecked fast-path reads (asserted in debug builds).
    bool occupied(int x, int y) const { return test(occ_, index(x, y)); }
    bool closed(int x, int y) const { return test(clo_, index(x, y)); }
    bool open(int x, int y) const {
        uint64_t i = index(x, y);
        return !test(occ_, i) && !test(clo_, i);
    }
    // Free-boundary read: out-of-grid cells are never occupied.
    bool occupied_or_false(int x, int y) const {
        return in_bounds(x, y) && occupied(x, y);
    }

    int64_t occupied_count() const { return popcount(occ_); }
    int64_t closed_count() const { return popcount(clo_); }

    // Sets every cell of `r` (which must lie inside the grid) to `s`.
    void fill(const Rect& r, CellState s);

    bool operator==(const Grid&) const = default;

    /// Text fixture format: one row per line from the top row (highest y)
    /// down, '.' open, '#' occupied, 'x' closed, each row newline-terminated.
    std::string to_text() const;
    static Grid from_text(std::string_view text);

    // Raw plane access for the dynamics hot path.
    const std::vector<uint64_t>& occupied_plane() const { return occ_; }

private:
    uint64_t index(int x, int y) const {
        assert(in_bounds(x, y));
        return uint64_t(y) * uint64_t(w_) + uint64_t(x);
    }
    static bool test(const std::vector<uint64_t>& plane, uint64_t i) {
        return (plane[i >> 6] >> (i & 63)) & 1u;
    }
    static void set_bit(std::vector<uint64_t>& plane, uint64_t i) {
        plane[i >> 6] |= uint64_t(1) << (i & 63);
    }
    static void clear_bit(std::vector<uint64_t>& plane, uint64_t i) {
        plane[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }
    static int64_t popcount(const std::vector<uint64_t>& plane);

    friend class FrontierEngine;

    int w_ = 0, h_ = 0;
    std::vector<uint64_t> occ_, clo_;
};

struct ClusterInfo {
    int64_t size = 0;
    Rect bbox;
};

struct ClusterSummary {
    int64_t cluster_count = 0;
    int max_linf_diameter = 0;  // max over clusters of max(bbox w, bbox h) - 1
    std::vector<ClusterInfo> clusters;
};

/// Labels the occupied set under 4-neighbor connectivity (union-find) and
/// summarizes cluster count, sizes, bounding boxes and the largest
/// l-infinity diameter.
ClusterSummary occupied_clusters(const Grid& g);

}  // namespace pbp
