#pragma once

#include <cstdint>
#include <vector>

#include "pbp/certificates.hpp"
#include "pbp/grid.hpp"

namespace pbp {

/// Constructed safe staircase: a seeded random east/north block path across
/// the window, a planted closed pivot with cleared protective rectangles in
/// every path block, and a sparse occupied field below the resulting
/// blocking structure. Generation retries (bumping an attempt counter into
/// the seed) until the all-closed dynamics meets the cluster-diameter
/// precondition of the blocking check, so fixtures are valid by
/// construction.
struct StaircaseParams {
    int m = 17;          // odd; the cluster precondition scale m/4
    int block_w = 22;    // >= m + 2 so pivots have horizontal slack
    int block_h = 36;    // >= 2m so the horizontal rectangle fits the bottom half
    int blocks_x = 6;
    int blocks_y = 3;
    double p_below = 0.012;  // sparse occupation below the structure
    int max_attempts = 64;
};

struct StaircaseFixture {
    Grid grid;
    BlockGeometry geom;
    BlockingPath path;
    std::vector<SafeCertificate> certs;
    BlockingStructure structure;
    int attempts_used = 0;
};

StaircaseFixture make_staircase_fixture(const StaircaseParams& params, uint64_t seed);

/// Same construction, then one protective rectangle is invalidated: a short
/// occupied column is planted directly below a middle pivot and a lone seed
/// is placed under that block's horizontal core, so occupation converted in
/// region A can break through the structure. The verdict on these fixtures
/// must be Violated (the planted cells are short enough to keep the cluster
/// precondition intact).
StaircaseFixture make_sabotaged_staircase_fixture(const StaircaseParams& params,
                                                  uint64_t seed);

/// Constructed good box: a diagonal occupied mesh of pitch
/// min(reach, interval_len - 1) covering every row and column, one interior
/// closed site off the mesh, and an extra sprinkle of occupied cells. The
/// box sits in a one-cell open frame so every outside boundary interval is
/// in-grid. Satisfies G1-G6 by construction.
struct GoodFixtureParams {
    GoodBoxParams gp = GoodBoxParams::desk(/*side=*/48, /*reach=*/6,
                                           /*interval_len=*/8, /*strip_w=*/20,
                                           /*strip_h=*/30, /*closed_cap=*/1.5,
                                           /*margin=*/12);
    double extra_occupied = 0.05;
};

struct GoodBoxFixture {
    Grid grid;
    Rect box;
    GoodBoxParams gp;
    Coord closed_site;
};

GoodBoxFixture make_good_box_fixture(const GoodFixtureParams& params, uint64_t seed);

/// Same construction with G2 deliberately broken: every occupied cell in the
/// column strictly above the closed site is removed up to the box's top
/// edge, leaving a chimney that occupation entering from the other sides can
/// never fill.
GoodBoxFixture make_g2_broken_fixture(const GoodFixtureParams& params, uint64_t seed);

/// Chimney contrast fixture: a one-cell-wide column of open cells with
/// closed cells at both ends and fully occupied flanking columns. The
/// modified rule never enters the chimney; the standard rule fills it in one
/// step.
struct ChimneyFixture {
    Grid grid;
    std::vector<Coord> chimney_cells;
};

ChimneyFixture make_chimney_fixture(int chimney_len = 5);

}  // namespace pbp
