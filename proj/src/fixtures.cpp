#include "pbp/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

#include "pbp/dynamics.hpp"
#include "pbp/rng.hpp"

namespace pbp {

namespace {

constexpr uint64_t kStaircaseStream = 7;
constexpr uint64_t kGoodFixtureStream = 8;

struct Rng {
    uint64_t key;
    uint64_t counter = 0;
    double next() { return uniform_at(key, counter++); }
    int below(int n) { return int(next() * n); }  // uniform in [0, n)
};

// Random east/north walk from block (0,0) to the right edge, at most two
// consecutive steps in one direction. Keeps enough north steps in reserve:
// after a move, the remaining east distance must fit in runs of two
// separated by the remaining north steps.
void random_path(Rng& rng, int blocks_x, int blocks_y, std::vector<BlockIndex>& blocks,
                 std::vector<StepDir>& steps) {
    if (blocks_x - 1 > 2 * blocks_y)
        throw std::invalid_argument("random_path: window too wide for the run constraint");
    blocks.assign(1, BlockIndex{0, 0});
    steps.clear();
    int x = 0, y = 0, run = 0;
    StepDir last = StepDir::East;
    while (x < blocks_x - 1) {
        const int rem_e = blocks_x - 1 - x;
        const int rem_n = blocks_y - 1 - y;
        const int run_e = (last == StepDir::East) ? run : 0;
        const int run_n = (last == StepDir::North) ? run : 0;
        const bool east_ok = run_e < 2 && (2 - (run_e + 1)) + 2 * rem_n >= rem_e - 1;
        const bool north_ok = rem_n > 0 && run_n < 2 && 2 * rem_n >= rem_e;
        StepDir d;
        if (east_ok && north_ok) d = rng.next() < 0.6 ? StepDir::East : StepDir::North;
        else if (east_ok) d = StepDir::East;
        else if (north_ok) d = StepDir::North;
        else throw std::logic_error("random_path: walk got stuck");
        if (d == StepDir::East) ++x;
        else ++y;
        run = (d == last) ? run + 1 : 1;
        last = d;
        blocks.push_back({x, y});
        steps.push_back(d);
    }
}

bool in_any_protective_rect(const std::vector<SafeCertificate>& certs, int x, int y) {
    for (const SafeCertificate& c : certs)
        if (c.vrect.contains(x, y) || c.hrect.contains(x, y)) return true;
    return false;
}

std::vector<size_t> run_end_indices(const BlockingPath& path) {
    std::vector<size_t> ends;
    const size_t n = path.blocks.size();
    for (size_t i = 0; i < n; ++i) {
        const bool entered_east = i == 0 || path.steps[i - 1] == StepDir::East;
        const bool leaves_north = i + 1 == n || path.steps[i] == StepDir::North;
        if (entered_east && leaves_north) ends.push_back(i);
    }
    return ends;
}

StaircaseFixture build_staircase(const StaircaseParams& params, uint64_t seed,
                                 int attempt, bool sabotage) {
    if (params.block_w < params.m + 2 || params.block_h < 2 * params.m)
        throw std::invalid_argument("build_staircase: blocks too small for m");
    const BlockGeometry geom =
        BlockGeometry::desk(params.m, params.block_w, params.block_h,
                            3 * params.block_h, 3 * params.block_w);
    const int w = params.blocks_x * params.block_w;
    const int h = params.blocks_y * params.block_h;

    Rng rng{derive_seed(seed, kStaircaseStream, uint64_t(attempt))};

    StaircaseFixture fx{Grid(w, h), geom, {}, {}, {}, attempt + 1};
    random_path(rng, params.blocks_x, params.blocks_y, fx.path.blocks, fx.path.steps);

    // Plant one closed pivot per path block; the grid has no occupied cells
    // yet, so every protective rectangle is trivially admissible.
    for (const BlockIndex& z : fx.path.blocks) {
        const Rect block = geom.block_rect(z);
        const int px = block.x0 + geom.half_m() +
                       rng.below(block.w - 2 * geom.half_m());
        const int py = block.y0 + block.h / 2 + rng.below(block.h - block.h / 2);
        fx.grid.set(px, py, CellState::Closed);
    }
    for (const BlockIndex& z : fx.path.blocks) {
        auto cert = is_safe_block(fx.grid, z, geom);
        if (!cert) throw std::logic_error("build_staircase: planted block not safe");
        fx.certs.push_back(*cert);
    }
    fx.structure = build_blocking_structure(fx.path, fx.certs, fx.grid.bounds());

    const auto ends = run_end_indices(fx.path);
    const SafeCertificate& first = fx.certs[ends.front()];

    // Sparse occupation below the structure. Protective rectangles stay
    // clear, as does the strip left of the first pivot above its core row
    // (there is no structure above those columns to block a leak).
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (rng.next() >= params.p_below) continue;
            if (fx.structure.in_region_a(x, y)) continue;
            if (x < first.pivot.x && y > first.core_h.a.y) continue;
            if (in_any_protective_rect(fx.certs, x, y)) continue;
            if (!fx.grid.open(x, y)) continue;
            fx.grid.set(x, y, CellState::Occupied);
        }
    }

    if (sabotage) {
        const SafeCertificate& sab = fx.certs[ends[ends.size() / 2]];
        for (int dy = 1; dy <= 3; ++dy)
            fx.grid.set(sab.pivot.x, sab.pivot.y - dy, CellState::Occupied);
        fx.grid.set(sab.pivot.x + 3, sab.core_h.a.y - 1, CellState::Occupied);
    }
    return fx;
}

bool meets_cluster_precondition(const StaircaseFixture& fx, int m) {
    Grid all_closed = fx.grid;
    for (const Coord& c : fx.structure.region_a_cells())
        all_closed.set(c, CellState::Closed);
    const Grid xi_c = closure(all_closed, Rule::Modified).grid;
    return 4 * occupied_clusters(xi_c).max_linf_diameter <= m;
}

StaircaseFixture make_staircase(const StaircaseParams& params, uint64_t seed,
                                bool sabotage) {
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        StaircaseFixture fx = build_staircase(params, seed, attempt, sabotage);
        if (meets_cluster_precondition(fx, params.m)) return fx;
    }
    throw std::runtime_error(
        "make_staircase_fixture: no attempt met the cluster precondition; "
        "lower p_below or raise m");
}

}  // namespace

StaircaseFixture make_staircase_fixture(const StaircaseParams& params, uint64_t seed) {
    return make_staircase(params, seed, false);
}

StaircaseFixture make_sabotaged_staircase_fixture(const StaircaseParams& params,
                                                  uint64_t seed) {
    return make_staircase(params, seed, true);
}

GoodBoxFixture make_good_box_fixture(const GoodFixtureParams& params, uint64_t seed) {
    const GoodBoxParams& gp = params.gp;
    const int pitch = std::min(gp.reach, gp.interval_len - 1);
    if (pitch < 2)
        throw std::invalid_argument("make_good_box_fixture: reach/interval too small");
    if (gp.margin < pitch || gp.side <= 2 * gp.margin)
        throw std::invalid_argument("make_good_box_fixture: margin incompatible with side");

    GoodBoxFixture fx{Grid(gp.side + 2, gp.side + 2), Rect{1, 1, gp.side, gp.side}, gp, {}};
    Rng rng{derive_seed(seed, kGoodFixtureStream, 0)};

    // Diagonal mesh: every row and column carries occupied cells with gaps
    // pitch - 1 < interval_len, and every cell sees mesh cells within
    // `pitch` <= reach in all four axis directions of the box interior.
    const int offset = rng.below(pitch);
    const Rect& box = fx.box;
    for (int y = box.y0; y <= box.y1(); ++y)
        for (int x = box.x0; x <= box.x1(); ++x)
            if (((x - box.x0) + (y - box.y0)) % pitch == offset)
                fx.grid.set(x, y, CellState::Occupied);

    // One interior closed site, off the mesh, margin cells from the boundary.
    const int lo_x = box.x0 + gp.margin, hi_x = box.x1() - gp.margin;
    const int lo_y = box.y0 + gp.margin, hi_y = box.y1() - gp.margin;
    Coord c;
    do {
        c = {lo_x + rng.below(hi_x - lo_x + 1), lo_y + rng.below(hi_y - lo_y + 1)};
    } while (((c.x - box.x0) + (c.y - box.y0)) % pitch == offset);
    fx.grid.set(c, CellState::Closed);
    fx.closed_site = c;

    if (params.extra_occupied > 0) {
        for (int y = box.y0; y <= box.y1(); ++y)
            for (int x = box.x0; x <= box.x1(); ++x)
                if (fx.grid.open(x, y) && rng.next() < params.extra_occupied)
                    fx.grid.set(x, y, CellState::Occupied);
    }

    if (!is_good_box(fx.grid, fx.box, gp).good)
        throw std::logic_error("make_good_box_fixture: construction is not good");
    return fx;
}

GoodBoxFixture make_g2_broken_fixture(const GoodFixtureParams& params, uint64_t seed) {
    GoodBoxFixture fx = make_good_box_fixture(params, seed);
    for (int y = fx.closed_site.y + 1; y <= fx.box.y1(); ++y)
        if (fx.grid.occupied(fx.closed_site.x, y))
            fx.grid.set(fx.closed_site.x, y, CellState::Open);
    return fx;
}

ChimneyFixture make_chimney_fixture(int chimney_len) {
    if (chimney_len < 1) throw std::invalid_argument("make_chimney_fixture: bad length");
    const int w = 5, h = chimney_len + 4;
    ChimneyFixture fx{Grid(w, h), {}};
    for (int y = 0; y < h; ++y) {
        fx.grid.set(1, y, CellState::Occupied);
        fx.grid.set(3, y, CellState::Occupied);
    }
    fx.grid.set(2, 1, CellState::Closed);
    fx.grid.set(2, chimney_len + 2, CellState::Closed);
    for (int y = 2; y < chimney_len + 2; ++y) fx.chimney_cells.push_back({2, y});
    return fx;
}

}  // namespace pbp
