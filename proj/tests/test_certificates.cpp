#include <cmath>
#include <functional>
#include <stdexcept>

#include "doctest.h"
#include "pbp/certificates.hpp"
#include "pbp/dynamics.hpp"
#include "pbp/fixtures.hpp"
#include "pbp/rng.hpp"
#include "pbp/sample.hpp"

using namespace pbp;

namespace {

bool rect_occupied_free(const Grid& g, const Rect& r) {
    Rect c = intersect(r, g.bounds());
    for (int y = c.y0; !c.empty() && y <= c.y1(); ++y)
        for (int x = c.x0; x <= c.x1(); ++x)
            if (g.occupied(x, y)) return false;
    return true;
}

// Independent re-check of every certificate invariant.
void require_valid_certificate(const Grid& g, const BlockGeometry& geom,
                               const SafeCertificate& cert) {
    Rect block = geom.block_rect(cert.z);
    REQUIRE(g.at(cert.pivot) == CellState::Closed);
    REQUIRE(cert.pivot.y >= block.y0 + block.h / 2);  // upper half
    REQUIRE(cert.pivot.y <= block.y1());
    REQUIRE(cert.vrect.w == geom.m);
    REQUIRE(cert.vrect.h == geom.vrect_h);
    REQUIRE(cert.pivot.x == cert.vrect.x0 + (geom.m - 1) / 2);  // middle column
    REQUIRE(cert.vrect.y1() == block.y1());                     // top edge in top edge
    REQUIRE(cert.vrect.x0 >= block.x0);
    REQUIRE(cert.vrect.x1() <= block.x1());
    REQUIRE(cert.hrect.w == geom.hrect_w);
    REQUIRE(cert.hrect.h == geom.m);
    REQUIRE(cert.hrect.x0 == block.x0);  // left edge on the block's left edge
    REQUIRE(cert.hrect.y0 >= block.y0);
    REQUIRE(cert.hrect.y1() <= block.y0 + block.h / 2 - 1);  // inside the bottom half
    REQUIRE(rect_occupied_free(g, cert.vrect));
    REQUIRE(rect_occupied_free(g, cert.hrect));
    REQUIRE(cert.core_v.vertical());
    REQUIRE(cert.core_v.a.x == cert.pivot.x);
    REQUIRE_FALSE(cert.core_h.vertical());
    REQUIRE(cert.core_h.a.y == cert.hrect.y0 + (geom.m - 1) / 2);
}

// Brute-force safety predicate, independent of the production scan.
bool naive_is_safe(const Grid& g, BlockIndex z, const BlockGeometry& geom) {
    Rect block = geom.block_rect(z);
    bool hrect_ok = false;
    for (int ry0 = block.y0; ry0 + geom.m - 1 <= block.y0 + block.h / 2 - 1; ++ry0)
        if (rect_occupied_free(g, Rect{block.x0, ry0, geom.hrect_w, geom.m})) hrect_ok = true;
    if (!hrect_ok) return false;
    for (int y = block.y0 + block.h / 2; y <= block.y1(); ++y)
        for (int x = block.x0; x <= block.x1(); ++x) {
            if (!g.closed(x, y)) continue;
            if (y < block.y1() - geom.vrect_h + 1) continue;
            int vx0 = x - (geom.m - 1) / 2;
            if (vx0 < block.x0 || vx0 + geom.m - 1 > block.x1()) continue;
            if (rect_occupied_free(g, Rect{vx0, block.y1() - geom.vrect_h + 1, geom.m, geom.vrect_h}))
                return true;
        }
    return false;
}

// Exhaustive path existence for small windows.
bool any_path_exists(const BlockField& field) {
    const Rect& win = field.window;
    std::function<bool(int, int, int, int)> dfs = [&](int x, int y, int dir, int run) {
        if (x == win.w - 1 || y == win.h - 1) return true;
        // east
        if (x + 1 < win.w && field.safe[size_t(y) * win.w + x + 1] &&
            (dir != 0 || run < 2) && dfs(x + 1, y, 0, dir == 0 ? run + 1 : 1))
            return true;
        // north
        if (y + 1 < win.h && field.safe[size_t(y + 1) * win.w + x] &&
            (dir != 1 || run < 2) && dfs(x, y + 1, 1, dir == 1 ? run + 1 : 1))
            return true;
        return false;
    };
    for (int x = 0; x < win.w; ++x)
        if (field.safe[x] && dfs(x, 0, -1, 0)) return true;
    for (int y = 1; y < win.h; ++y)
        if (field.safe[size_t(y) * win.w] && dfs(0, y, -1, 0)) return true;
    return false;
}

void require_valid_path(const BlockingPath& path, const BlockField& field) {
    REQUIRE_FALSE(path.blocks.empty());
    REQUIRE(path.steps.size() == path.blocks.size() - 1);
    const Rect& win = field.window;
    BlockIndex first = path.blocks.front(), last = path.blocks.back();
    REQUIRE((first.x == win.x0 || first.y == win.y0));
    REQUIRE((last.x == win.x1() || last.y == win.y1()));
    int run = 0;
    for (size_t i = 0; i < path.steps.size(); ++i) {
        BlockIndex a = path.blocks[i], b = path.blocks[i + 1];
        if (path.steps[i] == StepDir::East) {
            REQUIRE(b.x == a.x + 1);
            REQUIRE(b.y == a.y);
        } else {
            REQUIRE(b.x == a.x);
            REQUIRE(b.y == a.y + 1);
        }
        run = (i > 0 && path.steps[i] == path.steps[i - 1]) ? run + 1 : 1;
        REQUIRE(run <= 2);
    }
    for (const BlockIndex& z : path.blocks) REQUIRE(field.at(z));
}

BlockField field_from_bits(Rect window, const std::vector<uint8_t>& bits) {
    BlockField f;
    f.window = window;
    f.safe = bits;
    return f;
}

// The desk geometry of the safe-block unit fixture.
const BlockGeometry kFixGeom = BlockGeometry::desk(5, 30, 20, 30, 90);

Grid safe_fixture_grid() {
    Grid g(90, 20);
    g.set(15, 19, CellState::Closed);  // pivot on the top-middle column
    return g;
}

// Independent witness re-checks, one per condition.
void require_witness_refails(const Grid& g, const Rect& box, const GoodBoxParams& gp,
                             int cond, const GoodWitness& w) {
    switch (cond) {
        case 0: {  // G1: two closed sites too close
            REQUIRE(g.closed(w.site.x, w.site.y));
            REQUIRE(g.closed(w.site2.x, w.site2.y));
            int d = std::max(std::abs(w.site.x - w.site2.x), std::abs(w.site.y - w.site2.y));
            REQUIRE(d <= gp.margin - 1);
            break;
        }
        case 1: {  // G2: closed site with a bare direction
            REQUIRE(g.closed(w.site.x, w.site.y));
            const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
            bool found = false;
            for (int s = 1; s <= gp.reach; ++s) {
                int x = w.site.x + dx[w.direction] * s, y = w.site.y + dy[w.direction] * s;
                if (!box.contains(x, y)) break;
                if (g.occupied(x, y)) found = true;
            }
            REQUIRE_FALSE(found);
            break;
        }
        case 2: {  // G3: occupied-free interval
            REQUIRE((w.region.w == gp.interval_len || w.region.h == gp.interval_len));
            for (int y = w.region.y0; y <= w.region.y1(); ++y)
                for (int x = w.region.x0; x <= w.region.x1(); ++x) {
                    REQUIRE(box.contains(x, y));
                    REQUIRE_FALSE(g.occupied(x, y));
                }
            break;
        }
        case 3: {  // G4: overfull strip
            REQUIRE(w.region.w == gp.strip_w);
            REQUIRE(w.region.h == gp.strip_h);
            int count = 0;
            for (int y = w.region.y0; y <= w.region.y1(); ++y)
                for (int x = w.region.x0; x <= w.region.x1(); ++x) {
                    REQUIRE(box.contains(x, y));
                    if (g.closed(x, y)) ++count;
                }
            REQUIRE(double(count) > gp.closed_cap);
            break;
        }
        case 4: {  // G5: closed site too near the boundary
            REQUIRE(g.closed(w.site.x, w.site.y));
            int d = std::min(std::min(w.site.x - box.x0, box.x1() - w.site.x),
                             std::min(w.site.y - box.y0, box.y1() - w.site.y));
            REQUIRE(d < gp.margin);
            break;
        }
        case 5: {  // G6: two closed sites sharing a row or column
            REQUIRE(g.closed(w.site.x, w.site.y));
            REQUIRE(g.closed(w.site2.x, w.site2.y));
            REQUIRE((w.site.x == w.site2.x || w.site.y == w.site2.y));
            REQUIRE_FALSE(w.site == w.site2);
            break;
        }
    }
}

}  // namespace

TEST_CASE("p-derived block geometry follows the dimension formulas") {
    BlockGeometry geom = BlockGeometry::from_p(5, 3, 0.2, 0.05, 0.05);
    const double logp = std::log(1.0 / 0.05);
    CHECK(geom.block_w == int(std::floor(0.05 * logp / 0.05)));
    CHECK(geom.block_w == 2);
    CHECK(geom.block_h == 2 * 5 * int(std::ceil(0.2 / (5 * 0.05))));
    CHECK(geom.block_h == 10);
    CHECK(geom.vrect_h == 3 * int(std::ceil(0.2 / 0.05)));
    CHECK(geom.vrect_h == 12);
    CHECK(geom.hrect_w == 3 * geom.block_w);

    CHECK_THROWS_AS(BlockGeometry::from_p(4, 3, 0.2, 0.05, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(BlockGeometry::from_p(5, 3, 0.2, 0.05, 1e-12), std::invalid_argument);
    CHECK_THROWS_AS(GoodBoxParams::from_p(3, 1e-12), std::invalid_argument);
    CHECK_THROWS_AS(BlockGeometry::from_p(5, 2, 0.2, 0.05, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(BlockGeometry::from_p(5, 3, 0.2, 0.0001, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(BlockGeometry::desk(4, 10, 10, 10, 10), std::invalid_argument);
}

TEST_CASE("is_safe_block finds and re-validates the fixture certificate") {
    Grid g = safe_fixture_grid();
    auto cert = is_safe_block(g, {0, 0}, kFixGeom);
    REQUIRE(cert.has_value());
    CHECK(cert->pivot == Coord{15, 19});
    require_valid_certificate(g, kFixGeom, *cert);
    CHECK(naive_is_safe(g, {0, 0}, kFixGeom));
}

TEST_CASE("is_safe_block failure modes") {
    Grid no_closed(90, 20);
    CHECK_FALSE(is_safe_block(no_closed, {0, 0}, kFixGeom).has_value());
    CHECK_FALSE(naive_is_safe(no_closed, {0, 0}, kFixGeom));

    Grid spoiled = safe_fixture_grid();
    spoiled.set(14, 5, CellState::Occupied);  // inside the vertical rectangle
    CHECK_FALSE(is_safe_block(spoiled, {0, 0}, kFixGeom).has_value());
    CHECK_FALSE(naive_is_safe(spoiled, {0, 0}, kFixGeom));

    Grid hspoiled = safe_fixture_grid();
    for (int ry0 = 0; ry0 + 4 <= 9; ++ry0)
        hspoiled.set(40, ry0 + 2, CellState::Occupied);  // occupied in every hrect slot
    CHECK_FALSE(is_safe_block(hspoiled, {0, 0}, kFixGeom).has_value());
    CHECK_FALSE(naive_is_safe(hspoiled, {0, 0}, kFixGeom));

    CHECK_THROWS_AS(is_safe_block(no_closed, {0, 1}, kFixGeom), std::out_of_range);
}

TEST_CASE("pivot scan order is topmost then leftmost") {
    Grid g = safe_fixture_grid();
    g.set(20, 19, CellState::Closed);  // same top row, further right
    auto cert = is_safe_block(g, {0, 0}, kFixGeom);
    REQUIRE(cert.has_value());
    CHECK(cert->pivot == Coord{15, 19});

    Grid g2(90, 20);
    g2.set(20, 17, CellState::Closed);
    g2.set(8, 18, CellState::Closed);  // higher row wins over leftmost
    auto cert2 = is_safe_block(g2, {0, 0}, kFixGeom);
    REQUIRE(cert2.has_value());
    CHECK(cert2->pivot == Coord{8, 18});
}

TEST_CASE("certificate text line round trip") {
    Grid g = safe_fixture_grid();
    auto cert = is_safe_block(g, {0, 0}, kFixGeom);
    REQUIRE(cert.has_value());
    CHECK(cert->to_line() == "z=(0,0) pivot=(15,19) vrect=(13,-10,5,30) hrect=(0,0,90,5)");
    SafeCertificate back = SafeCertificate::from_line(cert->to_line());
    CHECK(back == *cert);
    CHECK_THROWS_AS(SafeCertificate::from_line("nonsense"), std::invalid_argument);
}

TEST_CASE("safe_block_field over a tiled fixture") {
    // A closed pivot on the top-middle column of every block and no occupied
    // cells anywhere: every block is safe.
    BlockGeometry geom = BlockGeometry::desk(5, 10, 12, 16, 30);
    Grid g(40, 36);
    for (int zy = 0; zy < 3; ++zy)
        for (int zx = 0; zx < 4; ++zx)
            g.set(zx * 10 + 5, zy * 12 + 11, CellState::Closed);
    BlockField field = safe_block_field(g, geom, Rect{0, 0, 4, 3});
    for (int zy = 0; zy < 3; ++zy)
        for (int zx = 0; zx < 4; ++zx) CHECK(field.at({zx, zy}));

    Grid open(40, 36);
    BlockField none = safe_block_field(open, geom, Rect{0, 0, 4, 3});
    for (int zy = 0; zy < 3; ++zy)
        for (int zx = 0; zx < 4; ++zx) CHECK_FALSE(none.at({zx, zy}));

    CHECK_THROWS_AS(safe_block_field(open, geom, Rect{0, 0, 5, 3}), std::out_of_range);
}

TEST_CASE("safe density grows with the closed density under coupling") {
    BlockGeometry geom = BlockGeometry::desk(5, 12, 12, 15, 36);
    int safe_lo = 0, safe_hi = 0;
    const double qs[2] = {0.01, 0.08};
    for (int t = 0; t < 40; ++t) {
        auto grids = sample_coupled(48, 36, 0.02, qs, derive_seed(5150, 1, uint64_t(t)),
                                    BoundaryCondition::Free);
        BlockField lo = safe_block_field(grids[0], geom, Rect{0, 0, 4, 3});
        BlockField hi = safe_block_field(grids[1], geom, Rect{0, 0, 4, 3});
        for (int zy = 0; zy < 3; ++zy)
            for (int zx = 0; zx < 4; ++zx) {
                if (lo.at({zx, zy})) {
                    ++safe_lo;
                    CHECK(hi.at({zx, zy}));  // more closed sites can only help
                }
                if (hi.at({zx, zy})) ++safe_hi;
            }
    }
    CHECK(safe_hi > safe_lo);
}

TEST_CASE("estimate_safe_prob degenerate laws") {
    BlockGeometry geom = BlockGeometry::desk(5, 12, 12, 15, 36);
    SafeProbEstimate no_closed = estimate_safe_prob(geom, PollutionParams{0.3, 0.0, 9}, 50);
    CHECK(no_closed.fraction == 0.0);  // S1 needs a closed site

    SafeProbEstimate certain = estimate_safe_prob(geom, PollutionParams{0.0, 1.0, 9}, 50);
    CHECK(certain.fraction == 1.0);  // no occupied sites, closed everywhere
    CHECK(certain.ci.lo == 1.0);
}

TEST_CASE("estimate_safe_prob matches an independent predicate implementation") {
    // The p-derived geometry at the pinned parameters is degenerate (the
    // vertical rectangle is wider than the block), so the probability is 0.
    const double p = 0.05, q = 5 * p * p / std::log(1.0 / p);
    BlockGeometry pinned = BlockGeometry::from_p(5, 3, 0.2, 0.05, p);
    CHECK(pinned.block_w < pinned.m);
    SafeProbEstimate est = estimate_safe_prob(pinned, PollutionParams{p, q, 77}, 1000);
    CHECK(est.fraction == 0.0);

    // Non-degenerate desk geometry: compare against naive_is_safe on
    // independently sampled grids; the two fractions agree within the
    // combined confidence intervals.
    BlockGeometry geom = BlockGeometry::desk(5, 10, 10, 12, 20);
    PollutionParams params{0.01, 0.1, 77};
    est = estimate_safe_prob(geom, params, 1000);
    CHECK(est.fraction > 0.02);
    CHECK(est.fraction < 0.98);

    int z2 = 0;
    while (geom.block_h * (z2 + 1) < geom.vrect_h) ++z2;
    int hits = 0;
    const int oracle_trials = 1000;
    for (int t = 0; t < oracle_trials; ++t) {
        PollutionParams trial = params;
        trial.seed = derive_seed(31415, 9, uint64_t(t));  // independent sample
        Grid g = sample(std::max(geom.block_w, geom.hrect_w), geom.block_h * (z2 + 1),
                        trial, BoundaryCondition::Free);
        if (naive_is_safe(g, {0, z2}, geom)) ++hits;
    }
    Interval oracle_ci = wilson95(hits, oracle_trials);
    CHECK(oracle_ci.lo <= est.ci.hi);
    CHECK(est.ci.lo <= oracle_ci.hi);
}

TEST_CASE("blocking path on trivial fields") {
    std::vector<uint8_t> all(36, 1);
    auto path = find_blocking_path(field_from_bits(Rect{0, 0, 6, 6}, all));
    REQUIRE(path.has_value());
    require_valid_path(*path, field_from_bits(Rect{0, 0, 6, 6}, all));

    std::vector<uint8_t> none(36, 0);
    CHECK_FALSE(find_blocking_path(field_from_bits(Rect{0, 0, 6, 6}, none)).has_value());
}

TEST_CASE("strict staircase field returns exactly that staircase") {
    // blocks (0,0) (1,0) (1,1) (2,1) (2,2) (3,2) ... alternating east/north
    Rect win{0, 0, 6, 6};
    std::vector<uint8_t> bits(36, 0);
    std::vector<BlockIndex> stair;
    int x = 0, y = 0;
    stair.push_back({0, 0});
    bits[0] = 1;
    while (x < 5) {
        ++x;
        stair.push_back({x, y});
        bits[size_t(y) * 6 + x] = 1;
        if (x < 5) {
            ++y;
            stair.push_back({x, y});
            bits[size_t(y) * 6 + x] = 1;
        }
    }
    auto path = find_blocking_path(field_from_bits(win, bits));
    REQUIRE(path.has_value());
    REQUIRE(path->blocks.size() == stair.size());
    for (size_t i = 0; i < stair.size(); ++i) CHECK(path->blocks[i] == stair[i]);
}

TEST_CASE("path search agrees with exhaustive enumeration on small windows") {
    for (int i = 0; i < 300; ++i) {
        uint64_t seed = derive_seed(2718, 4, uint64_t(i));
        int w = 2 + int(uniform_at(seed, 0) * 5);
        int h = 2 + int(uniform_at(seed, 1) * 5);
        double density = 0.2 + uniform_at(seed, 2) * 0.6;
        std::vector<uint8_t> bits(size_t(w) * size_t(h));
        for (size_t c = 0; c < bits.size(); ++c)
            bits[c] = uniform_at(seed, 10 + c) < density ? 1 : 0;
        BlockField field = field_from_bits(Rect{0, 0, w, h}, bits);
        auto path = find_blocking_path(field);
        bool exists = any_path_exists(field);
        REQUIRE(path.has_value() == exists);
        if (path) require_valid_path(*path, field);
    }
}

TEST_CASE("single-block path structure and the partition identity") {
    BlockGeometry geom = BlockGeometry::desk(5, 10, 10, 12, 30);
    Grid g(10, 10);
    g.set(5, 9, CellState::Closed);
    auto cert = is_safe_block(g, {0, 0}, geom);
    REQUIRE(cert.has_value());

    BlockingPath path;
    path.blocks.push_back({0, 0});
    BlockingStructure s = build_blocking_structure(path, {{*cert}}, g.bounds());
    REQUIRE(s.segments.size() == 2);
    // vertical part: pivot column from the clipped vrect bottom to the pivot
    CHECK(s.segments[0].vertical());
    CHECK(s.segments[0].a == Coord{5, 0});
    CHECK(s.segments[0].b == Coord{5, 9});
    // horizontal part: from the pivot column to the clipped core end
    CHECK_FALSE(s.segments[1].vertical());
    CHECK(s.segments[1].a == Coord{5, cert->core_h.a.y});
    CHECK(s.segments[1].b == Coord{9, cert->core_h.a.y});

    // region A and its complement partition the window minus the segments
    int region = 0, complement = 0, segment = 0;
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 10; ++x) {
            bool a = s.in_region_a(x, y), on = s.on_segment(x, y);
            CHECK_FALSE((a && on));
            if (a) ++region;
            else if (on) ++segment;
            else ++complement;
        }
    CHECK(region + complement + segment == 100);
    CHECK(region == int(s.region_a_cells().size()));
    CHECK(segment > 0);

    BlockingPath mismatched = path;
    mismatched.blocks[0] = {1, 0};
    CHECK_THROWS_AS(build_blocking_structure(mismatched, {{*cert}}, g.bounds()),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_blocking_structure(path, {}, g.bounds()), std::invalid_argument);
}

TEST_CASE("staircase structure has one spliced core pair per run end") {
    StaircaseFixture fx = make_staircase_fixture(StaircaseParams{}, 404);
    const auto& path = fx.path;
    std::vector<const SafeCertificate*> run_ends;
    for (size_t i = 0; i < path.blocks.size(); ++i) {
        bool entered_east = i == 0 || path.steps[i - 1] == StepDir::East;
        bool leaves_north = i + 1 == path.blocks.size() || path.steps[i] == StepDir::North;
        if (entered_east && leaves_north) run_ends.push_back(&fx.certs[i]);
    }
    REQUIRE(run_ends.size() >= 3);  // a 6-block-wide window needs >= 3 east runs
    CHECK(fx.structure.segments.size() == 2 * run_ends.size());

    // each contributed segment pair sits weakly below/right of its pivot
    for (const Segment& seg : fx.structure.segments) {
        bool anchored = false;
        for (const SafeCertificate& c : fx.certs) {
            if (seg.vertical() && seg.a.x == c.pivot.x && seg.b.y <= c.pivot.y) anchored = true;
            if (!seg.vertical() && seg.a.y == c.core_h.a.y && seg.a.x == c.pivot.x) anchored = true;
        }
        CHECK(anchored);
    }

    // splicing: each horizontal core reaches the next run end's vertical
    // core column, and that vertical core reaches down past this core's row
    const Rect win = fx.grid.bounds();
    for (size_t i = 0; i + 1 < run_ends.size(); ++i) {
        const SafeCertificate& a = *run_ends[i];
        const SafeCertificate& b = *run_ends[i + 1];
        CHECK(b.pivot.x <= std::min(a.hrect.x1(), win.x1()));
        CHECK(std::max(b.vrect.y0, win.y0) <= a.core_h.a.y);
        CHECK(a.core_h.a.y < b.core_h.a.y);
    }
}

TEST_CASE("verify_blocking holds on an all-open grid below the structure") {
    StaircaseParams params;
    params.p_below = 0.0;
    StaircaseFixture fx = make_staircase_fixture(params, 11);
    BlockingVerdict v = verify_blocking(fx.grid, fx.structure, params.m);
    CHECK(v.outcome == BlockingOutcome::Holds);
}

TEST_CASE("verify_blocking on randomized staircases and sabotage") {
    StaircaseParams params;
    for (int i = 0; i < 6; ++i) {
        StaircaseFixture fx = make_staircase_fixture(params, derive_seed(21, 6, uint64_t(i)));
        CHECK(verify_blocking(fx.grid, fx.structure, params.m).outcome ==
              BlockingOutcome::Holds);
    }
    for (int i = 0; i < 3; ++i) {
        StaircaseFixture fx =
            make_sabotaged_staircase_fixture(params, derive_seed(22, 7, uint64_t(i)));
        BlockingVerdict v = verify_blocking(fx.grid, fx.structure, params.m);
        REQUIRE(v.outcome == BlockingOutcome::Violated);
        REQUIRE(v.witness.has_value());
        CHECK_FALSE(fx.structure.in_region_a(v.witness->x, v.witness->y));
        CHECK_FALSE(fx.structure.on_segment(v.witness->x, v.witness->y));
    }
}

TEST_CASE("verify_blocking reports the cluster precondition") {
    // single-block structure; a 3-cell occupied column below it has
    // l-infinity diameter 2 > m/4 for m = 5
    BlockGeometry geom = BlockGeometry::desk(5, 10, 10, 12, 30);
    Grid g(10, 10);
    g.set(5, 9, CellState::Closed);
    auto cert = is_safe_block(g, {0, 0}, geom);
    REQUIRE(cert.has_value());
    BlockingPath path;
    path.blocks.push_back({0, 0});
    BlockingStructure s = build_blocking_structure(path, {{*cert}}, g.bounds());
    for (int y = 5; y <= 7; ++y) g.set(1, y, CellState::Occupied);
    REQUIRE_FALSE(s.in_region_a(1, 5));
    BlockingVerdict v = verify_blocking(g, s, geom.m);
    CHECK(v.outcome == BlockingOutcome::ClusterPreconditionFailed);
    CHECK(v.max_cluster_diameter == 2);
}

TEST_CASE("good-box parameters follow the dimension formulas") {
    GoodBoxParams gp = GoodBoxParams::from_p(3, 0.15);
    const double logp = std::log(1.0 / 0.15);
    CHECK(gp.side == int(std::floor(3 * logp / 0.15)));
    CHECK(gp.side == 37);
    CHECK(gp.reach == 20);
    CHECK(gp.interval_len == int(std::floor(3 * logp / 0.15)));
    CHECK(gp.strip_w == 37);
    CHECK(gp.strip_h == 60);
    CHECK(gp.closed_cap == doctest::Approx(0.75));
    CHECK(gp.margin == 40);
    CHECK_THROWS_AS(GoodBoxParams::from_p(1, 0.15), std::invalid_argument);
    CHECK_THROWS_AS(GoodBoxParams::desk(0, 1, 1, 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("is_good_box literal evaluation") {
    GoodBoxParams gp = GoodBoxParams::desk(12, 3, 4, 6, 8, 1.0, 2);
    Grid g(12, 12);
    Rect box = g.bounds();

    SUBCASE("empty box fails only G3") {
        GoodReport rep = is_good_box(g, box, gp);
        CHECK_FALSE(rep.ok[2]);
        CHECK(rep.ok[0]);
        CHECK(rep.ok[1]);
        CHECK(rep.ok[3]);
        CHECK(rep.ok[4]);
        CHECK(rep.ok[5]);
        CHECK_FALSE(rep.good);
        REQUIRE(rep.witness[2].has_value());
        require_witness_refails(g, box, gp, 2, *rep.witness[2]);
    }

    SUBCASE("adjacent closed cells fail G1 and aligned ones fail G6") {
        g.set(5, 5, CellState::Closed);
        g.set(6, 5, CellState::Closed);
        GoodReport rep = is_good_box(g, box, gp);
        CHECK_FALSE(rep.ok[0]);
        CHECK_FALSE(rep.ok[5]);
        require_witness_refails(g, box, gp, 0, *rep.witness[0]);
        require_witness_refails(g, box, gp, 5, *rep.witness[5]);

        Grid diag(12, 12);
        diag.set(5, 5, CellState::Closed);
        diag.set(6, 6, CellState::Closed);
        GoodReport rep2 = is_good_box(diag, box, gp);
        CHECK_FALSE(rep2.ok[0]);
        CHECK(rep2.ok[5]);  // different row and column
    }

    SUBCASE("G4 counts closed sites in every strip offset") {
        GoodBoxParams tight = GoodBoxParams::desk(12, 3, 4, 4, 4, 1.0, 2);
        Grid s(12, 12);
        // two closed cells inside one 4x4 window but in distinct rows/columns
        s.set(4, 4, CellState::Closed);
        s.set(6, 6, CellState::Closed);
        GoodReport rep = is_good_box(s, s.bounds(), tight);
        CHECK_FALSE(rep.ok[3]);
        require_witness_refails(s, s.bounds(), tight, 3, *rep.witness[3]);
    }

    SUBCASE("G5 uses the margin frame") {
        g.set(1, 6, CellState::Closed);  // distance 1 < margin 2
        GoodReport rep = is_good_box(g, box, gp);
        CHECK_FALSE(rep.ok[4]);
        require_witness_refails(g, box, gp, 4, *rep.witness[4]);
    }

    SUBCASE("bounds are enforced") {
        CHECK_THROWS_AS(is_good_box(g, Rect{0, 0, 13, 12}, gp), std::out_of_range);
    }
}

TEST_CASE("constructed good fixture satisfies all six conditions and re-validates") {
    GoodFixtureParams params;
    GoodBoxFixture fx = make_good_box_fixture(params, 808);
    GoodReport rep = is_good_box(fx.grid, fx.box, fx.gp);
    CHECK(rep.good);
    for (int c = 0; c < 6; ++c) CHECK(rep.ok[size_t(c)]);

    // G2 witness machinery: break the fixture and re-check the witness
    GoodBoxFixture broken = make_g2_broken_fixture(params, 808);
    GoodReport brep = is_good_box(broken.grid, broken.box, broken.gp);
    CHECK_FALSE(brep.ok[1]);
    REQUIRE(brep.witness[1].has_value());
    require_witness_refails(broken.grid, broken.box, broken.gp, 1, *brep.witness[1]);
    CHECK(brep.witness[1]->site == broken.closed_site);
    CHECK(brep.witness[1]->direction == 2);  // no occupied to the north
}

TEST_CASE("good conditions survive eliminating the closed site") {
    GoodFixtureParams params;
    for (uint64_t seed : {1u, 2u, 3u}) {
        GoodBoxFixture fx = make_good_box_fixture(params, seed);
        Grid g = fx.grid;
        g.set(fx.closed_site, CellState::Occupied);
        CHECK(is_good_box(g, fx.box, fx.gp).good);
    }
}

TEST_CASE("verify_spread on good and broken fixtures") {
    GoodFixtureParams params;
    GoodBoxFixture fx = make_good_box_fixture(params, 1234);
    for (Side side : {Side::South, Side::North, Side::East, Side::West})
        CHECK(verify_spread(fx.grid, fx.box, fx.gp, side));

    GoodBoxFixture broken = make_g2_broken_fixture(params, 1234);
    CHECK_FALSE(spread_fills(broken.grid, broken.box, Side::South));
    CHECK_THROWS_AS(verify_spread(broken.grid, broken.box, broken.gp, Side::South),
                    std::logic_error);
}

TEST_CASE("spread with no closed sites needs only G3") {
    GoodBoxParams gp = GoodBoxParams::desk(16, 4, 5, 8, 8, 1.0, 5);
    Grid g(18, 18);
    Rect box{1, 1, 16, 16};
    for (int y = box.y0; y <= box.y1(); ++y)
        for (int x = box.x0; x <= box.x1(); ++x)
            if (((x - box.x0) + (y - box.y0)) % 4 == 2) g.set(x, y, CellState::Occupied);
    GoodReport rep = is_good_box(g, box, gp);
    REQUIRE(rep.good);
    CHECK(verify_spread(g, box, gp, Side::South));
    CHECK(verify_spread(g, box, gp, Side::West));
}

TEST_CASE("outside boundary intervals exclude the corners") {
    Rect box{2, 3, 4, 5};
    CHECK(outside_boundary_interval(box, Side::South) == Rect{2, 2, 4, 1});
    CHECK(outside_boundary_interval(box, Side::North) == Rect{2, 8, 4, 1});
    CHECK(outside_boundary_interval(box, Side::West) == Rect{1, 3, 1, 5});
    CHECK(outside_boundary_interval(box, Side::East) == Rect{6, 3, 1, 5});

    Grid g(6, 6);
    CHECK_THROWS_AS(spread_fills(g, g.bounds(), Side::South), std::invalid_argument);
}

TEST_CASE("estimate_good_prob behavior") {
    // q = 0 with a generous interval: the closed-site conditions never fail.
    GoodBoxParams gp = GoodBoxParams::desk(24, 4, 16, 12, 12, 1.0, 4);
    GoodProbEstimate est = estimate_good_prob(gp, PollutionParams{0.5, 0.0, 55}, 100);
    CHECK(est.condition_failure[0] == 0.0);
    CHECK(est.condition_failure[1] == 0.0);
    CHECK(est.condition_failure[4] == 0.0);
    CHECK(est.condition_failure[5] == 0.0);
    CHECK(est.fraction > 0.9);

    // union bound direction: per-condition failures sum to at least the
    // overall failure fraction
    GoodBoxParams gp2 = GoodBoxParams::from_p(3, 0.15);
    GoodProbEstimate est2 = estimate_good_prob(gp2, PollutionParams{0.15, 0.004, 56}, 150);
    double sum = 0;
    for (double f : est2.condition_failure) sum += f;
    CHECK(sum >= 1.0 - est2.fraction);
}

TEST_CASE("good fraction falls when q is multiplied by 100") {
    const double p = 0.15;
    const int n = 3;
    GoodBoxParams gp = GoodBoxParams::from_p(n, p);
    const double q1 = p * p / (std::log(1.0 / p) * std::pow(double(n), 4));
    const double q2 = 100 * q1;
    GoodProbEstimate lo = estimate_good_prob(gp, PollutionParams{p, q1, 99}, 200);
    GoodProbEstimate hi = estimate_good_prob(gp, PollutionParams{p, q2, 99}, 200);
    // identical trial seeds couple the samples: adding closed sites can only
    // destroy goodness, so the ordering is exact, and here strict
    CHECK(lo.fraction > hi.fraction);
}
