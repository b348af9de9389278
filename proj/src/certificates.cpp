#include "pbp/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <stdexcept>

#include "pbp/dynamics.hpp"
#include "pbp/rng.hpp"

namespace pbp {

bool Segment::contains(int x, int y) const {
    if (vertical())
        return x == a.x && y >= std::min(a.y, b.y) && y <= std::max(a.y, b.y);
    return y == a.y && x >= std::min(a.x, b.x) && x <= std::max(a.x, b.x);
}

BlockGeometry BlockGeometry::from_p(int m, int k, double eps, double delta, double p) {
    if (m < 5 || m % 2 == 0) throw std::invalid_argument("BlockGeometry: m must be odd and >= 5");
    if (k < 3) throw std::invalid_argument("BlockGeometry: k must be >= 3");
    if (!(eps > 0) || !(delta > 0) || !(p > 0) || !(p < 1))
        throw std::invalid_argument("BlockGeometry: need eps, delta > 0 and p in (0,1)");
    const double logp = std::log(1.0 / p);
    const double limit = 1e9;
    if (delta * logp / p > limit || eps / p > limit)
        throw std::invalid_argument("BlockGeometry: derived dimensions overflow");
    BlockGeometry geom;
    geom.m = m;
    geom.k = k;
    geom.eps = eps;
    geom.delta = delta;
    geom.p = p;
    geom.block_w = int(std::floor(delta * logp / p));
    geom.block_h = 2 * m * int(std::ceil(eps / (m * p)));
    geom.vrect_h = k * int(std::ceil(eps / p));
    geom.hrect_w = k * int(std::floor(delta * logp / p));
    if (geom.block_w < 1 || geom.block_h < 1 || geom.vrect_h < 1 || geom.hrect_w < 1)
        throw std::invalid_argument("BlockGeometry: derived dimensions must all be >= 1");
    return geom;
}

BlockGeometry BlockGeometry::desk(int m, int block_w, int block_h, int vrect_h, int hrect_w) {
    if (m < 1 || m % 2 == 0) throw std::invalid_argument("BlockGeometry: m must be odd and positive");
    if (block_w < 1 || block_h < 1 || vrect_h < 1 || hrect_w < 1)
        throw std::invalid_argument("BlockGeometry: dimensions must be positive");
    BlockGeometry geom;
    geom.m = m;
    geom.block_w = block_w;
    geom.block_h = block_h;
    geom.vrect_h = vrect_h;
    geom.hrect_w = hrect_w;
    return geom;
}

namespace {

bool any_occupied(const Grid& g, const Rect& r) {
    Rect c = intersect(r, g.bounds());
    for (int y = c.y0; !c.empty() && y <= c.y1(); ++y)
        for (int x = c.x0; x <= c.x1(); ++x)
            if (g.occupied(x, y)) return true;
    return false;
}

}  // namespace

std::optional<SafeCertificate> is_safe_block(const Grid& g, BlockIndex z,
                                             const BlockGeometry& geom) {
    const Rect block = geom.block_rect(z);
    if (!g.in_bounds(block.x0, block.y0) || !g.in_bounds(block.x1(), block.y1()))
        throw std::out_of_range("is_safe_block: block outside grid");

    // S3 does not depend on the pivot: take the lowest admissible rectangle.
    const int half_n = block.h / 2;  // upper half of the block starts at y0 + half_n
    Rect hrect{};
    bool have_hrect = false;
    for (int ry0 = block.y0; ry0 + geom.m - 1 <= block.y0 + half_n - 1; ++ry0) {
        Rect cand{block.x0, ry0, geom.hrect_w, geom.m};
        if (!any_occupied(g, cand)) {
            hrect = cand;
            have_hrect = true;
            break;
        }
    }
    if (!have_hrect) return std::nullopt;

    const int top = block.y1();
    const int y_lo = std::max(block.y0 + half_n, top - geom.vrect_h + 1);
    for (int y = top; y >= y_lo; --y) {
        for (int x = block.x0 + geom.half_m(); x <= block.x1() - geom.half_m(); ++x) {
            if (!g.closed(x, y)) continue;
            Rect vrect{x - geom.half_m(), top - geom.vrect_h + 1, geom.m, geom.vrect_h};
            if (any_occupied(g, vrect)) continue;
            SafeCertificate cert;
            cert.z = z;
            cert.pivot = {x, y};
            cert.vrect = vrect;
            cert.hrect = hrect;
            cert.core_v = Segment{{x, vrect.y0}, {x, vrect.y1()}};
            const int hy = hrect.y0 + geom.half_m();
            cert.core_h = Segment{{hrect.x0, hy}, {hrect.x1(), hy}};
            return cert;
        }
    }
    return std::nullopt;
}

BlockField safe_block_field(const Grid& g, const BlockGeometry& geom, const Rect& window) {
    if (window.empty()) throw std::invalid_argument("safe_block_field: empty window");
    BlockField field;
    field.window = window;
    field.safe.assign(size_t(window.w) * size_t(window.h), 0);
    for (int zy = window.y0; zy <= window.y1(); ++zy)
        for (int zx = window.x0; zx <= window.x1(); ++zx)
            if (is_safe_block(g, {zx, zy}, geom))
                field.safe[size_t(zy - window.y0) * size_t(window.w) + size_t(zx - window.x0)] = 1;
    return field;
}

SafeProbEstimate estimate_safe_prob(const BlockGeometry& geom,
                                    const PollutionParams& params, int trials) {
    if (trials < 1) throw std::invalid_argument("estimate_safe_prob: trials must be >= 1");
    params.validate();
    // Give the block's protective region room: place the block high enough
    // that its vertical rectangle stays in-grid and make the grid as wide as
    // the horizontal rectangle.
    int z2 = 0;
    while (geom.block_h * (z2 + 1) < geom.vrect_h) ++z2;
    const int w = std::max(geom.block_w, geom.hrect_w);
    const int h = geom.block_h * (z2 + 1);
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        PollutionParams trial = params;
        trial.seed = derive_seed(params.seed, 4 /* SeedStream::SafeProb */, uint64_t(t));
        Grid g = sample(w, h, trial, BoundaryCondition::Free);
        if (is_safe_block(g, {0, z2}, geom)) ++hits;
    }
    SafeProbEstimate est;
    est.trials = trials;
    est.fraction = double(hits) / trials;
    est.ci = wilson95(hits, trials);
    return est;
}

std::string SafeCertificate::to_line() const {
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "z=(%d,%d) pivot=(%d,%d) vrect=(%d,%d,%d,%d) hrect=(%d,%d,%d,%d)", z.x,
                  z.y, pivot.x, pivot.y, vrect.x0, vrect.y0, vrect.w, vrect.h, hrect.x0,
                  hrect.y0, hrect.w, hrect.h);
    return buf;
}

SafeCertificate SafeCertificate::from_line(std::string_view line) {
    SafeCertificate c;
    int n = std::sscanf(std::string(line).c_str(),
                        "z=(%d,%d) pivot=(%d,%d) vrect=(%d,%d,%d,%d) hrect=(%d,%d,%d,%d)",
                        &c.z.x, &c.z.y, &c.pivot.x, &c.pivot.y, &c.vrect.x0, &c.vrect.y0,
                        &c.vrect.w, &c.vrect.h, &c.hrect.x0, &c.hrect.y0, &c.hrect.w,
                        &c.hrect.h);
    if (n != 12) throw std::invalid_argument("SafeCertificate::from_line: bad format");
    c.core_v = Segment{{c.pivot.x, c.vrect.y0}, {c.pivot.x, c.vrect.y1()}};
    const int hy = c.hrect.y0 + (c.hrect.h - 1) / 2;
    c.core_h = Segment{{c.hrect.x0, hy}, {c.hrect.x1(), hy}};
    return c;
}

namespace {

// BFS state for the blocking-path search.
constexpr int32_t kUnvisited = INT32_MIN;

int encode_state(int cell, StepDir dir, int run) {
    return (cell * 2 + int(dir)) * 2 + (run - 1);
}

}  // namespace

std::optional<BlockingPath> find_blocking_path(const BlockField& field) {
    const Rect& win = field.window;
    if (win.empty()) return std::nullopt;
    const int w = win.w, h = win.h;
    auto safe_at = [&](int x, int y) { return field.safe[size_t(y) * size_t(w) + size_t(x)] != 0; };
    auto is_goal = [&](int x, int y) { return x == w - 1 || y == h - 1; };

    // Start blocks in scan order: bottom edge left to right, then the rest
    // of the left edge bottom to top. Each start gets its own BFS, so the
    // earliest start that reaches the right or top edge wins; on a field
    // that is exactly one staircase this returns the whole staircase.
    std::vector<int> starts;
    for (int x = 0; x < w; ++x)
        if (safe_at(x, 0)) starts.push_back(x);
    for (int y = 1; y < h; ++y)
        if (safe_at(0, y)) starts.push_back(y * w);

    std::vector<int32_t> prev(size_t(w) * size_t(h) * 4);
    std::deque<int> queue;

    for (int root : starts) {
        const int rx = root % w, ry = root / w;
        if (is_goal(rx, ry)) {
            BlockingPath path;
            path.blocks.push_back({win.x0 + rx, win.y0 + ry});
            return path;
        }
        std::fill(prev.begin(), prev.end(), kUnvisited);
        queue.clear();
        int goal_state = -1;

        auto try_enter = [&](int from_state, int x, int y, StepDir dir, int run) {
            if (run > 2 || x >= w || y >= h || !safe_at(x, y)) return false;
            int s = encode_state(y * w + x, dir, run);
            if (prev[size_t(s)] != kUnvisited) return false;
            prev[size_t(s)] = from_state;
            if (is_goal(x, y)) {
                goal_state = s;
                return true;
            }
            queue.push_back(s);
            return false;
        };
        // Roots carry no previous direction; encoded as -(cell + 1).
        if (!try_enter(-(root + 1), rx + 1, ry, StepDir::East, 1))
            try_enter(-(root + 1), rx, ry + 1, StepDir::North, 1);
        while (goal_state < 0 && !queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            const int run = (s & 1) + 1;
            const StepDir dir = StepDir((s >> 1) & 1);
            const int x = (s >> 2) % w, y = (s >> 2) / w;
            if (try_enter(s, x + 1, y, StepDir::East, dir == StepDir::East ? run + 1 : 1))
                break;
            if (try_enter(s, x, y + 1, StepDir::North, dir == StepDir::North ? run + 1 : 1))
                break;
        }
        if (goal_state < 0) continue;

        std::vector<int> cells;
        std::vector<StepDir> dirs;
        int s = goal_state;
        while (s >= 0) {
            cells.push_back(s >> 2);
            dirs.push_back(StepDir((s >> 1) & 1));
            s = prev[size_t(s)];
        }
        cells.push_back(-s - 1);
        std::reverse(cells.begin(), cells.end());
        std::reverse(dirs.begin(), dirs.end());

        BlockingPath path;
        for (int cell : cells) path.blocks.push_back({win.x0 + cell % w, win.y0 + cell / w});
        path.steps = std::move(dirs);
        return path;
    }
    return std::nullopt;
}

namespace {

void add_segment(BlockingStructure& s, Segment seg) {
    // normalize and clip to the window
    if (seg.vertical()) {
        int lo = std::max(std::min(seg.a.y, seg.b.y), s.window.y0);
        int hi = std::min(std::max(seg.a.y, seg.b.y), s.window.y1());
        if (lo > hi || seg.a.x < s.window.x0 || seg.a.x > s.window.x1()) return;
        seg = Segment{{seg.a.x, lo}, {seg.a.x, hi}};
        int& env = s.envelope[size_t(seg.a.x - s.window.x0)];
        env = std::max(env, hi);
    } else {
        int lo = std::max(std::min(seg.a.x, seg.b.x), s.window.x0);
        int hi = std::min(std::max(seg.a.x, seg.b.x), s.window.x1());
        if (lo > hi || seg.a.y < s.window.y0 || seg.a.y > s.window.y1()) return;
        seg = Segment{{lo, seg.a.y}, {hi, seg.a.y}};
        for (int x = lo; x <= hi; ++x) {
            int& env = s.envelope[size_t(x - s.window.x0)];
            env = std::max(env, seg.a.y);
        }
    }
    s.segments.push_back(seg);
}

}  // namespace

bool BlockingStructure::on_segment(int x, int y) const {
    for (const Segment& seg : segments)
        if (seg.contains(x, y)) return true;
    return false;
}

std::vector<Coord> BlockingStructure::region_a_cells() const {
    std::vector<Coord> cells;
    for (int y = window.y0; y <= window.y1(); ++y)
        for (int x = window.x0; x <= window.x1(); ++x)
            if (in_region_a(x, y)) cells.push_back({x, y});
    return cells;
}

BlockingStructure build_blocking_structure(const BlockingPath& path,
                                           std::span<const SafeCertificate> certs,
                                           const Rect& window) {
    if (path.blocks.empty())
        throw std::invalid_argument("build_blocking_structure: empty path");
    if (certs.size() != path.blocks.size())
        throw std::invalid_argument("build_blocking_structure: one certificate per path block");
    for (size_t i = 0; i < certs.size(); ++i)
        if (!(certs[i].z == path.blocks[i]))
            throw std::invalid_argument("build_blocking_structure: certificate/block mismatch");
    if (window.empty())
        throw std::invalid_argument("build_blocking_structure: empty window");

    BlockingStructure s;
    s.window = window;
    s.envelope.assign(size_t(window.w), BlockingStructure::kNoSegment);

    const size_t n = path.blocks.size();
    for (size_t i = 0; i < n; ++i) {
        // Last block of a horizontal run: entered by an east step (or the
        // path start) and followed by a north step (or the path end).
        const bool entered_east = i == 0 || path.steps[i - 1] == StepDir::East;
        const bool leaves_north = i + 1 == n || path.steps[i] == StepDir::North;
        if (!entered_east || !leaves_north) continue;
        const SafeCertificate& c = certs[i];
        add_segment(s, Segment{{c.pivot.x, c.vrect.y0}, {c.pivot.x, c.pivot.y}});
        add_segment(s, Segment{{c.pivot.x, c.core_h.a.y}, {c.core_h.b.x, c.core_h.a.y}});
    }
    return s;
}

BlockingVerdict verify_blocking(const Grid& g, const BlockingStructure& s, int m) {
    const Rect& win = s.window;
    if (win.empty() || !g.in_bounds(win.x0, win.y0) || !g.in_bounds(win.x1(), win.y1()))
        throw std::out_of_range("verify_blocking: structure window outside grid");

    Grid all_occ = g, all_clo = g;
    for (int y = win.y0; y <= win.y1(); ++y) {
        for (int x = win.x0; x <= win.x1(); ++x) {
            if (!s.in_region_a(x, y)) continue;
            all_occ.set(x, y, CellState::Occupied);
            all_clo.set(x, y, CellState::Closed);
        }
    }
    const Grid xi_o = closure(all_occ, Rule::Modified).grid;
    const Grid xi_c = closure(all_clo, Rule::Modified).grid;

    BlockingVerdict verdict;
    verdict.max_cluster_diameter = occupied_clusters(xi_c).max_linf_diameter;
    if (4 * verdict.max_cluster_diameter > m) {
        verdict.outcome = BlockingOutcome::ClusterPreconditionFailed;
        return verdict;
    }
    for (int y = win.y0; y <= win.y1(); ++y) {
        for (int x = win.x0; x <= win.x1(); ++x) {
            if (s.in_region_a(x, y) || s.on_segment(x, y)) continue;
            if (xi_o.occupied(x, y) != xi_c.occupied(x, y)) {
                verdict.outcome = BlockingOutcome::Violated;
                verdict.witness = Coord{x, y};
                return verdict;
            }
        }
    }
    verdict.outcome = BlockingOutcome::Holds;
    return verdict;
}

GoodBoxParams GoodBoxParams::from_p(int n, double p) {
    if (n < 2) throw std::invalid_argument("GoodBoxParams: n must be >= 2");
    if (!(p > 0) || !(p < 1)) throw std::invalid_argument("GoodBoxParams: p must be in (0,1)");
    const double logp = std::log(1.0 / p);
    if (n * logp / p > 1e9 || double(n) * n / p > 1e9)
        throw std::invalid_argument("GoodBoxParams: derived lengths overflow");
    GoodBoxParams gp;
    gp.n = n;
    gp.p = p;
    gp.side = int(std::floor(n * logp / p));
    gp.reach = int(std::ceil(n / p));
    gp.interval_len = int(std::floor(3.0 * logp / p));
    gp.strip_w = int(std::floor(n * logp / p));
    gp.strip_h = int(std::floor(double(n) * n / p));
    gp.closed_cap = n / 4.0;
    gp.margin = 2 * gp.reach;
    if (gp.side < 1 || gp.reach < 1 || gp.interval_len < 1 || gp.strip_w < 1 ||
        gp.strip_h < 1 || gp.margin < 1)
        throw std::invalid_argument("GoodBoxParams: derived lengths must all be >= 1");
    return gp;
}

GoodBoxParams GoodBoxParams::desk(int side, int reach, int interval_len, int strip_w,
                                  int strip_h, double closed_cap, int margin) {
    if (side < 1 || reach < 1 || interval_len < 1 || strip_w < 1 || strip_h < 1 ||
        margin < 1 || !(closed_cap >= 0))
        throw std::invalid_argument("GoodBoxParams: fields must be positive");
    GoodBoxParams gp;
    gp.side = side;
    gp.reach = reach;
    gp.interval_len = interval_len;
    gp.strip_w = strip_w;
    gp.strip_h = strip_h;
    gp.closed_cap = closed_cap;
    gp.margin = margin;
    return gp;
}

std::string_view side_name(Side s) {
    switch (s) {
        case Side::North: return "north";
        case Side::South: return "south";
        case Side::East: return "east";
        case Side::West: return "west";
    }
    return "?";
}

std::optional<Side> side_from_name(std::string_view name) {
    if (name == "north") return Side::North;
    if (name == "south") return Side::South;
    if (name == "east") return Side::East;
    if (name == "west") return Side::West;
    return std::nullopt;
}

namespace {

int linf(Coord a, Coord b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

}  // namespace

GoodReport is_good_box(const Grid& g, const Rect& box, const GoodBoxParams& gp) {
    if (box.empty() || !g.in_bounds(box.x0, box.y0) || !g.in_bounds(box.x1(), box.y1()))
        throw std::out_of_range("is_good_box: box outside grid");

    GoodReport rep;
    rep.ok.fill(true);
    auto fail = [&](int cond, GoodWitness w) {
        if (rep.ok[size_t(cond)]) {
            rep.ok[size_t(cond)] = false;
            rep.witness[size_t(cond)] = w;
        }
    };

    std::vector<Coord> closed_sites;
    for (int y = box.y0; y <= box.y1(); ++y)
        for (int x = box.x0; x <= box.x1(); ++x)
            if (g.closed(x, y)) closed_sites.push_back({x, y});

    // G1: no two closed sites within l-infinity distance (strictly closer
    // than `margin`).
    for (size_t i = 0; i < closed_sites.size() && rep.ok[0]; ++i)
        for (size_t j = i + 1; j < closed_sites.size(); ++j)
            if (linf(closed_sites[i], closed_sites[j]) <= gp.margin - 1) {
                fail(0, GoodWitness{closed_sites[i], closed_sites[j], {}, -1});
                break;
            }

    // G2: occupied site within `reach` in each axis direction, inside the box.
    for (const Coord& c : closed_sites) {
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            bool found = false;
            for (int step = 1; step <= gp.reach; ++step) {
                int x = c.x + dx[d] * step, y = c.y + dy[d] * step;
                if (!box.contains(x, y)) break;
                if (g.occupied(x, y)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                fail(1, GoodWitness{c, {}, {}, d});
                break;
            }
        }
        if (!rep.ok[1]) break;
    }

    // G3: every interval of interval_len cells in a row or column contains
    // an occupied site (closed cells do not count as occupied).
    if (gp.interval_len <= box.w) {
        for (int y = box.y0; y <= box.y1() && rep.ok[2]; ++y) {
            int run = 0;
            for (int x = box.x0; x <= box.x1(); ++x) {
                run = g.occupied(x, y) ? 0 : run + 1;
                if (run >= gp.interval_len) {
                    fail(2, GoodWitness{{}, {}, Rect{x - gp.interval_len + 1, y, gp.interval_len, 1}, -1});
                    break;
                }
            }
        }
    }
    if (gp.interval_len <= box.h) {
        for (int x = box.x0; x <= box.x1() && rep.ok[2]; ++x) {
            int run = 0;
            for (int y = box.y0; y <= box.y1(); ++y) {
                run = g.occupied(x, y) ? 0 : run + 1;
                if (run >= gp.interval_len) {
                    fail(2, GoodWitness{{}, {}, Rect{x, y - gp.interval_len + 1, 1, gp.interval_len}, -1});
                    break;
                }
            }
        }
    }

    // G4: sliding strip_w x strip_h window over closed counts.
    if (gp.strip_w <= box.w && gp.strip_h <= box.h && !closed_sites.empty()) {
        const int bw = box.w, bh = box.h;
        std::vector<int32_t> prefix(size_t(bw + 1) * size_t(bh + 1), 0);
        auto pref = [&](int x, int y) -> int32_t& {
            return prefix[size_t(y) * size_t(bw + 1) + size_t(x)];
        };
        for (int y = 1; y <= bh; ++y)
            for (int x = 1; x <= bw; ++x)
                pref(x, y) = pref(x - 1, y) + pref(x, y - 1) - pref(x - 1, y - 1) +
                             (g.closed(box.x0 + x - 1, box.y0 + y - 1) ? 1 : 0);
        for (int oy = 0; oy + gp.strip_h <= bh && rep.ok[3]; ++oy) {
            for (int ox = 0; ox + gp.strip_w <= bw; ++ox) {
                int count = pref(ox + gp.strip_w, oy + gp.strip_h) - pref(ox, oy + gp.strip_h) -
                            pref(ox + gp.strip_w, oy) + pref(ox, oy);
                if (double(count) > gp.closed_cap) {
                    fail(3, GoodWitness{{}, {}, Rect{box.x0 + ox, box.y0 + oy, gp.strip_w, gp.strip_h}, -1});
                    break;
                }
            }
        }
    }

    // G5: closed sites keep `margin` cells away from the box boundary.
    for (const Coord& c : closed_sites) {
        int dist = std::min(std::min(c.x - box.x0, box.x1() - c.x),
                            std::min(c.y - box.y0, box.y1() - c.y));
        if (dist < gp.margin) {
            fail(4, GoodWitness{c, {}, {}, -1});
            break;
        }
    }

    // G6: at most one closed site per row and per column.
    {
        std::vector<int> row_first(size_t(box.h), -1), col_first(size_t(box.w), -1);
        for (const Coord& c : closed_sites) {
            int& rf = row_first[size_t(c.y - box.y0)];
            if (rf >= 0) {
                fail(5, GoodWitness{{rf, c.y}, c, {}, -1});
                break;
            }
            rf = c.x;
        }
        if (rep.ok[5]) {
            for (const Coord& c : closed_sites) {
                int& cf = col_first[size_t(c.x - box.x0)];
                if (cf >= 0) {
                    fail(5, GoodWitness{{c.x, cf}, c, {}, -1});
                    break;
                }
                cf = c.y;
            }
        }
    }

    rep.good = rep.ok[0] && rep.ok[1] && rep.ok[2] && rep.ok[3] && rep.ok[4] && rep.ok[5];
    return rep;
}

Rect outside_boundary_interval(const Rect& box, Side side) {
    switch (side) {
        case Side::North: return Rect{box.x0, box.y1() + 1, box.w, 1};
        case Side::South: return Rect{box.x0, box.y0 - 1, box.w, 1};
        case Side::East: return Rect{box.x1() + 1, box.y0, 1, box.h};
        case Side::West: return Rect{box.x0 - 1, box.y0, 1, box.h};
    }
    return Rect{};
}

bool spread_fills(const Grid& g, const Rect& box, Side side) {
    const Rect interval = outside_boundary_interval(box, side);
    if (!g.in_bounds(interval.x0, interval.y0) || !g.in_bounds(interval.x1(), interval.y1()))
        throw std::invalid_argument("spread_fills: boundary interval outside grid");
    Grid in = g;
    in.fill(interval, CellState::Occupied);
    const Grid fin = closure(in, Rule::Modified).grid;
    for (int y = box.y0; y <= box.y1(); ++y)
        for (int x = box.x0; x <= box.x1(); ++x)
            if (!fin.closed(x, y) && !fin.occupied(x, y)) return false;
    return true;
}

bool verify_spread(const Grid& g, const Rect& box, const GoodBoxParams& gp, Side side) {
    if (!is_good_box(g, box, gp).good)
        throw std::logic_error("verify_spread: box is not good");
    return spread_fills(g, box, side);
}

GoodProbEstimate estimate_good_prob(const GoodBoxParams& gp,
                                    const PollutionParams& params, int trials) {
    if (trials < 1) throw std::invalid_argument("estimate_good_prob: trials must be >= 1");
    params.validate();
    GoodProbEstimate est;
    est.trials = trials;
    int good = 0;
    std::array<int, 6> failures{};
    for (int t = 0; t < trials; ++t) {
        PollutionParams trial = params;
        trial.seed = derive_seed(params.seed, 5 /* SeedStream::GoodProb */, uint64_t(t));
        Grid g = sample(gp.side, gp.side, trial, BoundaryCondition::Free);
        GoodReport rep = is_good_box(g, g.bounds(), gp);
        if (rep.good) ++good;
        for (int c = 0; c < 6; ++c)
            if (!rep.ok[size_t(c)]) ++failures[size_t(c)];
    }
    est.fraction = double(good) / trials;
    est.ci = wilson95(good, trials);
    for (int c = 0; c < 6; ++c) est.condition_failure[size_t(c)] = double(failures[size_t(c)]) / trials;
    return est;
}

}  // namespace pbp
