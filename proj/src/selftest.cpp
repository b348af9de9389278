#include "pbp/selftest.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pbp/certificates.hpp"
#include "pbp/dynamics.hpp"
#include "pbp/fixtures.hpp"
#include "pbp/grid.hpp"
#include "pbp/rng.hpp"
#include "pbp/sample.hpp"

namespace pbp {

namespace {

constexpr uint64_t kSelftestSeed = 0x5e1f7e57;

Grid random_grid(uint64_t seed, int max_side = 48) {
    const int w = 8 + int(uniform_at(seed, 1000001) * (max_side - 8));
    const int h = 8 + int(uniform_at(seed, 1000002) * (max_side - 8));
    const double p = 0.01 + uniform_at(seed, 1000003) * 0.49;
    const double q = uniform_at(seed, 1000004) * 0.2;
    return sample(w, h, PollutionParams{p, q, seed}, BoundaryCondition::Free);
}

Grid mirror_x(const Grid& g) {
    Grid out(g.width(), g.height());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            out.set(g.width() - 1 - x, y, g.at(x, y));
    return out;
}

Grid mirror_y(const Grid& g) {
    Grid out(g.width(), g.height());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            out.set(x, g.height() - 1 - y, g.at(x, y));
    return out;
}

Grid rotate90(const Grid& g) {
    Grid out(g.height(), g.width());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            out.set(g.height() - 1 - y, x, g.at(x, y));
    return out;
}

bool occupied_subset(const Grid& a, const Grid& b) {
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x)
            if (a.occupied(x, y) && !b.occupied(x, y)) return false;
    return true;
}

struct Suite {
    const char* name;
    std::function<bool(std::string&)> run;
};

bool check_confluence(std::string& detail) {
    for (int i = 0; i < 150; ++i) {
        Grid g = random_grid(derive_seed(kSelftestSeed, 101, uint64_t(i)));
        for (Rule r : kAllRules) {
            FinalGrid fast = closure(g, r);
            FinalGrid slow = closure_naive(g, r);
            if (!(fast.grid == slow.grid) ||
                fast.steps_to_fixpoint != slow.steps_to_fixpoint) {
                detail = "frontier and naive closure disagree";
                return false;
            }
        }
    }
    detail = "150 grids x 3 rules";
    return true;
}

bool check_monotonicity(std::string& detail) {
    for (int i = 0; i < 100; ++i) {
        uint64_t seed = derive_seed(kSelftestSeed, 102, uint64_t(i));
        const double qs[2] = {0.05, 0.15};
        std::vector<Grid> pair = sample_coupled(24, 24, 0.2, qs, seed, BoundaryCondition::Free);
        for (Rule r : kAllRules)
            if (!occupied_subset(closure(pair[1], r).grid, closure(pair[0], r).grid)) {
                detail = "raising q enlarged a final occupied set";
                return false;
            }
    }
    detail = "100 coupled pairs x 3 rules";
    return true;
}

bool check_domination(std::string& detail) {
    for (int i = 0; i < 100; ++i) {
        Grid g = random_grid(derive_seed(kSelftestSeed, 103, uint64_t(i)));
        Grid mod = closure(g, Rule::Modified).grid;
        Grid mpv = closure(g, Rule::ModifiedPlusVertical).grid;
        Grid std_ = closure(g, Rule::Standard).grid;
        if (!occupied_subset(mod, mpv) || !occupied_subset(mpv, std_)) {
            detail = "rule domination chain broken";
            return false;
        }
    }
    detail = "100 grids";
    return true;
}

bool check_symmetry(std::string& detail) {
    for (int i = 0; i < 40; ++i) {
        Grid g = random_grid(derive_seed(kSelftestSeed, 104, uint64_t(i)), 32);
        for (Rule r : kAllRules) {
            if (!(closure(mirror_x(g), r).grid == mirror_x(closure(g, r).grid)) ||
                !(closure(mirror_y(g), r).grid == mirror_y(closure(g, r).grid))) {
                detail = "reflection does not commute with closure";
                return false;
            }
        }
        for (Rule r : {Rule::Standard, Rule::Modified}) {
            if (!(closure(rotate90(g), r).grid == rotate90(closure(g, r).grid))) {
                detail = "rotation does not commute with closure";
                return false;
            }
        }
    }
    detail = "40 grids, reflections + rotations";
    return true;
}

bool check_elimination(std::string& detail) {
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        Grid g = random_grid(derive_seed(kSelftestSeed, 105, uint64_t(i)), 28);
        for (Rule r : kAllRules) {
            Grid fin = closure(g, r).grid;
            for (int y = 1; y + 1 < g.height(); ++y) {
                for (int x = 1; x + 1 < g.width(); ++x) {
                    if (!g.closed(x, y)) continue;
                    if (!fin.occupied(x - 1, y) || !fin.occupied(x + 1, y) ||
                        !fin.occupied(x, y - 1) || !fin.occupied(x, y + 1))
                        continue;
                    Grid fin2 = closure(eliminate(g, r, {x, y}), r).grid;
                    ++checked;
                    for (int yy = 0; yy < g.height(); ++yy)
                        for (int xx = 0; xx < g.width(); ++xx)
                            if (!(xx == x && yy == y) &&
                                fin.occupied(xx, yy) != fin2.occupied(xx, yy)) {
                                detail = "final configurations disagree off the eliminated cell";
                                return false;
                            }
                }
            }
        }
    }
    detail = std::to_string(checked) + " eliminable cells";
    return true;
}

bool check_clusters(std::string& detail) {
    for (int i = 0; i < 100; ++i) {
        Grid g = random_grid(derive_seed(kSelftestSeed, 106, uint64_t(i)));
        ClusterSummary got = occupied_clusters(g);
        // naive flood fill oracle
        std::vector<uint8_t> seen(size_t(g.width()) * size_t(g.height()), 0);
        int64_t count = 0;
        int max_diam = 0;
        for (int y = 0; y < g.height(); ++y) {
            for (int x = 0; x < g.width(); ++x) {
                if (!g.occupied(x, y) || seen[size_t(y) * g.width() + x]) continue;
                ++count;
                int x0 = x, x1 = x, y0 = y, y1 = y;
                std::vector<Coord> stack{{x, y}};
                seen[size_t(y) * g.width() + x] = 1;
                while (!stack.empty()) {
                    Coord c = stack.back();
                    stack.pop_back();
                    x0 = std::min(x0, c.x); x1 = std::max(x1, c.x);
                    y0 = std::min(y0, c.y); y1 = std::max(y1, c.y);
                    const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                    for (auto& d : nb) {
                        int nx = c.x + d[0], ny = c.y + d[1];
                        if (nx < 0 || nx >= g.width() || ny < 0 || ny >= g.height()) continue;
                        if (!g.occupied(nx, ny) || seen[size_t(ny) * g.width() + nx]) continue;
                        seen[size_t(ny) * g.width() + nx] = 1;
                        stack.push_back({nx, ny});
                    }
                }
                max_diam = std::max(max_diam, std::max(x1 - x0, y1 - y0));
            }
        }
        if (got.cluster_count != count || got.max_linf_diameter != max_diam) {
            detail = "union-find disagrees with flood fill";
            return false;
        }
    }
    detail = "100 grids vs flood fill";
    return true;
}

bool check_sampling(std::string& detail) {
    PollutionParams params{0.3, 0.1, 1234};
    Grid a = sample(32, 32, params, BoundaryCondition::Free);
    Grid b = sample(32, 32, params, BoundaryCondition::Free);
    if (!(a == b)) {
        detail = "resampling with the same seed changed the grid";
        return false;
    }
    const double qs[2] = {0.02, 0.1};
    std::vector<Grid> pair = sample_coupled(32, 32, 0.3, qs, 77, BoundaryCondition::Free);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) {
            if (pair[0].occupied(x, y) != pair[1].occupied(x, y)) {
                detail = "coupled occupied sets differ";
                return false;
            }
            if (pair[0].closed(x, y) && !pair[1].closed(x, y)) {
                detail = "coupled closed sets not nested";
                return false;
            }
        }
    detail = "determinism + coupling";
    return true;
}

bool check_blocking(std::string& detail) {
    StaircaseParams params;
    for (int i = 0; i < 5; ++i) {
        StaircaseFixture fx =
            make_staircase_fixture(params, derive_seed(kSelftestSeed, 107, uint64_t(i)));
        if (verify_blocking(fx.grid, fx.structure, params.m).outcome !=
            BlockingOutcome::Holds) {
            detail = "valid staircase not blocking";
            return false;
        }
    }
    for (int i = 0; i < 2; ++i) {
        StaircaseFixture fx = make_sabotaged_staircase_fixture(
            params, derive_seed(kSelftestSeed, 108, uint64_t(i)));
        if (verify_blocking(fx.grid, fx.structure, params.m).outcome !=
            BlockingOutcome::Violated) {
            detail = "sabotaged staircase not detected";
            return false;
        }
    }
    detail = "5 staircases hold, 2 sabotaged violated";
    return true;
}

bool check_spread(std::string& detail) {
    GoodFixtureParams params;
    const Side sides[4] = {Side::South, Side::North, Side::East, Side::West};
    for (int i = 0; i < 10; ++i) {
        GoodBoxFixture fx =
            make_good_box_fixture(params, derive_seed(kSelftestSeed, 109, uint64_t(i)));
        if (!verify_spread(fx.grid, fx.box, fx.gp, sides[i % 4])) {
            detail = "spread failed on a good box";
            return false;
        }
    }
    for (int i = 0; i < 3; ++i) {
        GoodBoxFixture fx =
            make_g2_broken_fixture(params, derive_seed(kSelftestSeed, 110, uint64_t(i)));
        if (is_good_box(fx.grid, fx.box, fx.gp).ok[1]) {
            detail = "G2 not broken in the broken fixture";
            return false;
        }
        if (spread_fills(fx.grid, fx.box, Side::South)) {
            detail = "spread succeeded despite the broken chimney";
            return false;
        }
    }
    detail = "10 good boxes fill, 3 broken chimneys block";
    return true;
}

}  // namespace

int run_selftest() {
    const Suite suites[] = {
        {"confluence", check_confluence},
        {"monotonicity", check_monotonicity},
        {"rule-domination", check_domination},
        {"symmetry", check_symmetry},
        {"elimination", check_elimination},
        {"clusters", check_clusters},
        {"sampling", check_sampling},
        {"blocking", check_blocking},
        {"spread", check_spread},
    };
    int failures = 0;
    for (const Suite& s : suites) {
        std::string detail;
        bool ok = false;
        try {
            ok = s.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%-18s %s%s%s\n", s.name, ok ? "ok" : "FAIL",
                    detail.empty() ? "" : "  ", detail.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace pbp
