#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbp/grid.hpp"
#include "pbp/sample.hpp"
#include "pbp/stats.hpp"

namespace pbp {

using BlockIndex = Coord;  // block coordinates z = (z1, z2)

// Axis-aligned run of cells, endpoints inclusive.
struct Segment {
    Coord a, b;
    bool vertical() const { return a.x == b.x; }
    bool contains(int x, int y) const;
    bool operator==(const Segment&) const = default;
};

/// Block tiling and protective-rectangle dimensions for safe blocks.
/// Block z covers (block_w * z.x, block_h * z.y) + [0, block_w) x [0, block_h).
///
/// The p-derived constructor uses
///   block_w = floor(delta * p^-1 * log p^-1)       (width  M)
///   block_h = 2 m ceil(eps / (m p))                (height N)
///   vrect_h = k * ceil(eps * p^-1)                 (vertical rectangle height)
///   hrect_w = k * floor(delta * p^-1 * log p^-1)   (horizontal rectangle width)
/// with m odd >= 5 and k >= 3. The desk constructor takes the four
/// dimensions directly and enforces only positivity and the parity of m;
/// the blocking guarantees are exact combinatorial statements at any
/// consistent scale, so tests can run far below the p-derived sizes.
struct BlockGeometry {
    int m = 5;
    int k = 0;                          // 0 for desk-scale geometry
    double eps = 0, delta = 0, p = 0;   // 0 for desk-scale geometry
    int block_w = 0;
    int block_h = 0;
    int vrect_h = 0;
    int hrect_w = 0;

    static BlockGeometry from_p(int m, int k, double eps, double delta, double p);
    static BlockGeometry desk(int m, int block_w, int block_h, int vrect_h, int hrect_w);

    int half_m() const { return (m - 1) / 2; }
    Rect block_rect(BlockIndex z) const {
        return Rect{block_w * z.x, block_h * z.y, block_w, block_h};
    }
};

/// Witness that a block is safe: a closed pivot in the upper half of the
/// block sitting on the middle column of an occupied-free vertical rectangle
/// hanging from the block's top edge, plus an occupied-free horizontal
/// rectangle leaving the bottom half of the block's left edge. The core is
/// the middle column of the vertical rectangle together with the middle row
/// of the horizontal one. Rectangles may stick out of the grid; cells
/// outside are permanently open and cannot violate the occupied-free
/// conditions.
struct SafeCertificate {
    BlockIndex z;
    Coord pivot;
    Rect vrect;
    Rect hrect;
    Segment core_v;
    Segment core_h;

    std::string to_line() const;
    static SafeCertificate from_line(std::string_view line);
    bool operator==(const SafeCertificate&) const = default;
};

/// Scans pivots topmost-then-leftmost over the upper half of block z and
/// returns a certificate for the first admissible pivot, or nullopt.
/// The block itself must lie inside the grid (std::out_of_range otherwise).
std::optional<SafeCertificate> is_safe_block(const Grid& g, BlockIndex z,
                                             const BlockGeometry& geom);

struct BlockField {
    Rect window;                // in block coordinates
    std::vector<uint8_t> safe;  // row-major over the window

    bool at(BlockIndex z) const {
        return window.contains(z) &&
               safe[size_t(z.y - window.y0) * size_t(window.w) + size_t(z.x - window.x0)] != 0;
    }
};

/// Per-block safety over a window of blocks, all of which must lie inside
/// the grid.
BlockField safe_block_field(const Grid& g, const BlockGeometry& geom, const Rect& window);

struct SafeProbEstimate {
    double fraction = 0.0;
    Interval ci;
    int trials = 0;
};

/// Monte Carlo estimate of P(a single block is safe) under the pollution
/// law, on a grid large enough to hold the whole protective region.
SafeProbEstimate estimate_safe_prob(const BlockGeometry& geom,
                                    const PollutionParams& params, int trials);

enum class StepDir : uint8_t { East = 0, North = 1 };

/// Path of safe blocks stepping east or north with at most two consecutive
/// steps in the same direction.
struct BlockingPath {
    std::vector<BlockIndex> blocks;
    std::vector<StepDir> steps;  // steps[i] leads from blocks[i] to blocks[i+1]
};

/// Searches for a path from the window's left or bottom edge to its right
/// or top edge through safe blocks, by BFS over states
/// (block, last direction, run length in {1,2}). Deterministic: east is
/// explored before north, FIFO order.
std::optional<BlockingPath> find_blocking_path(const BlockField& field);

/// Core segments contributed by the last block of each horizontal run of a
/// blocking path: the parts of that block's core weakly below and weakly
/// right of its pivot, clipped to the window. region A is everything in the
/// window strictly above the per-column upper envelope of the segments.
struct BlockingStructure {
    Rect window;
    std::vector<Segment> segments;
    std::vector<int> envelope;  // per window column; kNoSegment where empty

    static constexpr int kNoSegment = INT32_MIN;

    bool on_segment(int x, int y) const;
    bool in_region_a(int x, int y) const {
        if (!window.contains(x, y)) return false;
        int e = envelope[size_t(x - window.x0)];
        return e != kNoSegment && y > e;
    }
    std::vector<Coord> region_a_cells() const;
};

/// Requires one certificate per path block, in path order.
BlockingStructure build_blocking_structure(const BlockingPath& path,
                                           std::span<const SafeCertificate> certs,
                                           const Rect& window);

enum class BlockingOutcome : uint8_t { Holds, ClusterPreconditionFailed, Violated };

struct BlockingVerdict {
    BlockingOutcome outcome = BlockingOutcome::Holds;
    std::optional<Coord> witness;  // disagreeing cell when Violated
    int max_cluster_diameter = 0;  // in the all-closed final configuration
};

/// Converts region A to all-occupied and to all-closed, runs the modified
/// closure on both, and checks agreement on the window minus region A minus
/// the segment cells. If any occupied cluster of the all-closed final
/// configuration has l-infinity diameter greater than m/4 the cluster
/// precondition fails and no agreement verdict is attempted.
BlockingVerdict verify_blocking(const Grid& g, const BlockingStructure& s, int m);

/// Good-box parameter bundle. The p-derived constructor uses
///   side      = floor(n * p^-1 * log(1/p))
///   reach     = ceil(n / p)                       (G2)
///   interval  = floor(3 * p^-1 * log p^-1)        (G3)
///   strip_w   = floor(n * p^-1 * log p^-1)        (G4)
///   strip_h   = floor(n^2 * p^-1)                 (G4)
///   closed_cap= n / 4                             (G4)
///   margin    = 2 * ceil(n / p)                   (G1 separation, G5)
/// with n >= 2; the desk constructor takes the seven geometric fields
/// directly (positivity only).
struct GoodBoxParams {
    int n = 0;
    double p = 0;  // 0 for desk-scale
    int side = 0;
    int reach = 0;
    int interval_len = 0;
    int strip_w = 0;
    int strip_h = 0;
    double closed_cap = 0;
    int margin = 0;

    static GoodBoxParams from_p(int n, double p);
    static GoodBoxParams desk(int side, int reach, int interval_len, int strip_w,
                              int strip_h, double closed_cap, int margin);
};

// Witness content depends on the condition: the offending closed pair for
// G1, closed site and blocked direction for G2, the empty interval for G3,
// the overfull strip for G4, the too-close closed site for G5, the two
// same-line closed sites for G6.
struct GoodWitness {
    Coord site{};
    Coord site2{};
    Rect region{};
    int direction = -1;  // G2: 0 east, 1 west, 2 north, 3 south
};

struct GoodReport {
    std::array<bool, 6> ok{};  // conditions G1..G6, indices 0..5
    bool good = false;
    std::array<std::optional<GoodWitness>, 6> witness;
};

enum class Side : uint8_t { North = 0, South = 1, East = 2, West = 3 };

std::string_view side_name(Side s);
std::optional<Side> side_from_name(std::string_view);

/// Literal evaluation of the six good-box conditions on `box` (which must
/// lie inside the grid):
///   G1  no two closed sites within l-infinity distance < margin
///   G2  every closed site has an occupied site within `reach` in each of
///       the four axis directions, inside the box
///   G3  every horizontal/vertical interval of interval_len cells inside the
///       box contains an occupied site
///   G4  every strip_w x strip_h strip inside the box (all integer offsets)
///       has at most closed_cap closed sites
///   G5  no closed site within `margin` of the box boundary
///   G6  at most one closed site per row and per column of the box
GoodReport is_good_box(const Grid& g, const Rect& box, const GoodBoxParams& gp);

/// The outside boundary interval of `box` on `side`: the cells outside the
/// box adjacent to it across that side, corners excluded, so exactly the
/// box's side length of cells.
Rect outside_boundary_interval(const Rect& box, Side side);

/// Occupies the outside boundary interval on `side`, runs the modified
/// closure, and reports whether every non-closed cell of the box is
/// occupied in the fixpoint. No goodness precondition; this is the raw
/// spreading check used to demonstrate failures on broken boxes.
bool spread_fills(const Grid& g, const Rect& box, Side side);

/// spread_fills with the good-box contract: throws std::logic_error when
/// is_good_box(g, box, gp) is not good or the boundary interval leaves the
/// grid.
bool verify_spread(const Grid& g, const Rect& box, const GoodBoxParams& gp, Side side);

struct GoodProbEstimate {
    double fraction = 0.0;
    Interval ci;
    std::array<double, 6> condition_failure{};  // per-condition failure rates
    int trials = 0;
};

/// Samples side x side boxes under the pollution law and evaluates
/// is_good_box on each.
GoodProbEstimate estimate_good_prob(const GoodBoxParams& gp,
                                    const PollutionParams& params, int trials);

}  // namespace pbp
