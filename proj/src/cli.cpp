#include "pbp/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pbp/certificates.hpp"
#include "pbp/dynamics.hpp"
#include "pbp/experiments.hpp"
#include "pbp/fixtures.hpp"
#include "pbp/render.hpp"
#include "pbp/rng.hpp"
#include "pbp/sample.hpp"
#include "pbp/selftest.hpp"

namespace pbp {

namespace {

struct CliError {
    int code;
    std::string message;
};

Rule parse_rule(const std::string& name) {
    auto r = rule_from_name(name);
    if (!r) throw CLI::ValidationError("--rule", "unknown rule '" + name + "'");
    return *r;
}

BoundaryCondition parse_bc(const std::string& name) {
    if (name == "free") return BoundaryCondition::Free;
    if (name == "ring") return BoundaryCondition::OccupiedRing;
    throw CLI::ValidationError("--bc", "unknown boundary condition '" + name + "'");
}

Grid load_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{2, "cannot open grid file: " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    return Grid::from_text(ss.str());
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError{2, "cannot write file: " + path};
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

RgbColor parse_color(const std::string& spec, const char* flag) {
    int r, g, b;
    if (std::sscanf(spec.c_str(), "%d,%d,%d", &r, &g, &b) != 3 || r < 0 || r > 255 ||
        g < 0 || g > 255 || b < 0 || b > 255)
        throw CLI::ValidationError(flag, "expected r,g,b with components in 0..255");
    return RgbColor{uint8_t(r), uint8_t(g), uint8_t(b)};
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Plain key=value config support ('#' comments): keys become --key flags
// unless the flag is already on the command line, so explicit flags win.
// Boolean keys use true/false values.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    std::vector<std::string> out;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            ++i;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            out.push_back(args[i]);
        }
    }
    if (path.empty()) return out;

    std::ifstream in(path);
    if (!in) throw CliError{2, "cannot open config file: " + path};
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw CliError{2, "config line without '=': " + line};
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw CliError{2, "config line with empty key: " + line};
        std::string flag = "--" + key;
        bool present = false;
        for (const std::string& a : out)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        if (value == "true") out.push_back(flag);
        else if (value == "false") continue;
        else {
            out.push_back(flag);
            out.push_back(value);
        }
    }
    return out;
}

void print_threshold(const char* label, const ThresholdResult& res) {
    if (res.no_threshold) {
        std::printf("%s: no-threshold (occupation fraction at q=0 is below 1/2)\n", label);
    } else {
        std::printf("%s: q_hat=%.8g bracket=[%.8g, %.8g] evaluations=%d\n", label,
                    res.q_hat, res.lo, res.hi, res.evaluations);
    }
}

// Desk-scale block geometry flags shared by the `safe` subcommands.
struct GeometryFlags {
    int m = 5, k = 3;
    double eps = 0.2, delta = 0.05, p = 0.05;
    int block_w = 0, block_h = 0, vrect_h = 0, hrect_w = 0;

    BlockGeometry build() const {
        if (block_w > 0 || block_h > 0 || vrect_h > 0 || hrect_w > 0)
            return BlockGeometry::desk(m, block_w, block_h, vrect_h, hrect_w);
        return BlockGeometry::from_p(m, k, eps, delta, p);
    }
    void attach(CLI::App* app) {
        app->add_option("--m", m, "protective rectangle thickness (odd)");
        app->add_option("--k", k, "protective rectangle elongation");
        app->add_option("--eps", eps, "epsilon for the p-derived geometry");
        app->add_option("--delta", delta, "delta for the p-derived geometry");
        app->add_option("--p", p, "occupied probability (also sizes the p-derived geometry)");
        app->add_option("--block-w", block_w, "desk-scale block width");
        app->add_option("--block-h", block_h, "desk-scale block height");
        app->add_option("--vrect-h", vrect_h, "desk-scale vertical rectangle height");
        app->add_option("--hrect-w", hrect_w, "desk-scale horizontal rectangle width");
    }
};

struct GoodGeometryFlags {
    int n = 3;
    double p = 0.15;
    int side = 0, reach = 0, interval_len = 0, strip_w = 0, strip_h = 0, margin = 0;
    double closed_cap = -1.0;

    GoodBoxParams build() const {
        if (side > 0)
            return GoodBoxParams::desk(side, reach, interval_len, strip_w, strip_h,
                                       closed_cap < 0 ? 1.0 : closed_cap, margin);
        return GoodBoxParams::from_p(n, p);
    }
    void attach(CLI::App* app) {
        app->add_option("--n", n, "good-box scale parameter");
        app->add_option("--p", p, "occupied probability (also sizes the derived box)");
        app->add_option("--side", side, "desk-scale box side");
        app->add_option("--reach", reach, "desk-scale occupied reach (G2)");
        app->add_option("--interval", interval_len, "desk-scale interval length (G3)");
        app->add_option("--strip-w", strip_w, "desk-scale strip width (G4)");
        app->add_option("--strip-h", strip_h, "desk-scale strip height (G4)");
        app->add_option("--closed-cap", closed_cap, "desk-scale closed cap (G4)");
        app->add_option("--margin", margin, "desk-scale boundary margin (G1/G5)");
    }
};

int run(int argc, const char* const* argv) {
    CLI::App app{"polluted bootstrap percolation laboratory"};
    app.require_subcommand(1);
    app.footer(
        "Every subcommand also accepts --config FILE with plain key=value lines\n"
        "('#' starts a comment); flags given on the command line take precedence.\n"
        "The memory budget for default box sides can be set with the\n"
        "PBPLAB_MEM_BUDGET_MB environment variable.");

    // ---- simulate ----------------------------------------------------
    struct {
        double p = 0.1, q = 0.01;
        int L = 200;
        std::string rule = "modified", bc = "free";
        uint64_t seed = 1;
        int trials = 1;
    } sim;
    CLI::App* simulate = app.add_subcommand("simulate", "sample, close and report statistics");
    simulate->add_option("--p", sim.p, "occupied probability");
    simulate->add_option("--q", sim.q, "closed probability");
    simulate->add_option("--L", sim.L, "box side");
    simulate->add_option("--rule", sim.rule, "standard|modified|modified+vertical");
    simulate->add_option("--bc", sim.bc, "free|ring");
    simulate->add_option("--seed", sim.seed, "master seed");
    simulate->add_option("--trials", sim.trials, "number of trials");

    // ---- render -------------------------------------------------------
    struct {
        double p = 0.1, q = 0.01;
        int L = 200;
        std::string rule = "modified", bc = "ring", out = "out.ppm";
        uint64_t seed = 1;
        std::string c_init, c_event, c_closed, c_open;
    } ren;
    CLI::App* render = app.add_subcommand("render", "simulate and write a P6 pixmap");
    render->add_option("--p", ren.p, "occupied probability");
    render->add_option("--q", ren.q, "closed probability");
    render->add_option("--L", ren.L, "box side");
    render->add_option("--rule", ren.rule, "update rule");
    render->add_option("--bc", ren.bc, "free|ring");
    render->add_option("--seed", ren.seed, "master seed");
    render->add_option("--out", ren.out, "output .ppm path")->required();
    render->add_option("--color-initial", ren.c_init, "r,g,b for initially occupied");
    render->add_option("--color-eventual", ren.c_event, "r,g,b for eventually occupied");
    render->add_option("--color-closed", ren.c_closed, "r,g,b for closed");
    render->add_option("--color-open", ren.c_open, "r,g,b for never-occupied open");

    // ---- scan ----------------------------------------------------------
    struct {
        double p = 0.1;
        std::vector<double> alphas{0.0, 0.05, 0.2, 1.0, 5.0, 20.0};
        double beta = 1.0;
        std::string rule = "modified", bc = "free", out;
        int L = 0, trials = 200;
        uint64_t seed = 1;
        bool timings = false;
        uint64_t mem_mb = memory_budget_bytes() >> 20;
    } sc;
    CLI::App* scan = app.add_subcommand("scan", "occupation fractions along q = alpha p^2 / log(1/p)^beta");
    scan->add_option("--p", sc.p, "occupied probability");
    scan->add_option("--alphas", sc.alphas, "alpha values")->delimiter(',');
    scan->add_option("--beta", sc.beta, "log exponent of the scan axis");
    scan->add_option("--rule", sc.rule, "update rule");
    scan->add_option("--bc", sc.bc, "free|ring");
    scan->add_option("--L", sc.L, "box side (0: default rule)");
    scan->add_option("--trials", sc.trials, "trials per row");
    scan->add_option("--seed", sc.seed, "master seed");
    scan->add_option("--out", sc.out, "CSV output path (default stdout)");
    scan->add_flag("--timings", sc.timings, "include wall-clock seconds in the CSV");
    scan->add_option("--mem-budget-mb", sc.mem_mb, "memory budget for the default L");

    // ---- qc -------------------------------------------------------------
    struct {
        double p = 0.1, tol = 0.25;
        std::string rule = "modified", bc = "free";
        int L = 0, trials = 400;
        uint64_t seed = 1;
        uint64_t mem_mb = memory_budget_bytes() >> 20;
    } qc;
    CLI::App* qccmd = app.add_subcommand("qc", "bisect the occupation threshold on q");
    qccmd->add_option("--p", qc.p, "occupied probability");
    qccmd->add_option("--rule", qc.rule, "update rule");
    qccmd->add_option("--bc", qc.bc, "free|ring");
    qccmd->add_option("--L", qc.L, "box side (0: default rule)");
    qccmd->add_option("--trials", qc.trials, "base trials per probe");
    qccmd->add_option("--tol", qc.tol, "relative bracket tolerance");
    qccmd->add_option("--seed", qc.seed, "master seed");
    qccmd->add_option("--mem-budget-mb", qc.mem_mb, "memory budget for the default L");

    // ---- compare ----------------------------------------------------------
    struct {
        std::vector<double> ps{0.12, 0.10, 0.08};
        std::string bc = "free", out;
        int trials = 400;
        double tol = 0.25;
        uint64_t seed = 1;
        uint64_t mem_mb = memory_budget_bytes() >> 20;
    } cmp;
    CLI::App* compare = app.add_subcommand("compare", "standard vs modified thresholds");
    compare->add_option("--p-list", cmp.ps, "p values")->delimiter(',');
    compare->add_option("--bc", cmp.bc, "free|ring");
    compare->add_option("--trials", cmp.trials, "base trials per probe");
    compare->add_option("--tol", cmp.tol, "relative bracket tolerance");
    compare->add_option("--seed", cmp.seed, "master seed");
    compare->add_option("--out", cmp.out, "table output path (default stdout)");
    compare->add_option("--mem-budget-mb", cmp.mem_mb, "memory budget for the default L");

    // ---- safe -------------------------------------------------------------
    GeometryFlags safe_geom;
    struct {
        double q = 0.002;
        int trials = 1000;
        uint64_t seed = 1;
        std::string grid_file;
        int zx = 0, zy = 0;
    } safe;
    CLI::App* safecmd = app.add_subcommand("safe", "safe-block certificates");
    CLI::App* safe_prob = safecmd->add_subcommand("prob", "estimate P(block is safe)");
    safe_geom.attach(safe_prob);
    safe_prob->add_option("--q", safe.q, "closed probability");
    safe_prob->add_option("--trials", safe.trials, "Monte Carlo trials");
    safe_prob->add_option("--seed", safe.seed, "master seed");
    CLI::App* safe_check = safecmd->add_subcommand("check", "certificate for one block of a grid file");
    safe_geom.attach(safe_check);
    safe_check->add_option("--grid", safe.grid_file, "grid fixture file")->required();
    safe_check->add_option("--zx", safe.zx, "block index x");
    safe_check->add_option("--zy", safe.zy, "block index y");
    safecmd->require_subcommand(1);

    // ---- good ---------------------------------------------------------------
    GoodGeometryFlags good_geom;
    struct {
        double q = 0.002;
        int trials = 200;
        uint64_t seed = 1;
        std::string grid_file;
        std::vector<int> box;
        int window_w = 4, window_h = 4;
        uint64_t mem_mb = memory_budget_bytes() >> 20;
    } good;
    CLI::App* goodcmd = app.add_subcommand("good", "good-box conditions G1-G6");
    CLI::App* good_prob = goodcmd->add_subcommand("prob", "estimate P(box is good)");
    good_geom.attach(good_prob);
    good_prob->add_option("--q", good.q, "closed probability");
    good_prob->add_option("--trials", good.trials, "Monte Carlo trials");
    good_prob->add_option("--seed", good.seed, "master seed");
    CLI::App* good_check = goodcmd->add_subcommand("check", "evaluate G1-G6 on a grid file");
    good_geom.attach(good_check);
    good_check->add_option("--grid", good.grid_file, "grid fixture file")->required();
    good_check->add_option("--box", good.box, "box as x0,y0,w,h (default: whole grid)")
        ->delimiter(',');
    CLI::App* good_window = goodcmd->add_subcommand("window", "good-box density over a window");
    good_geom.attach(good_window);
    good_window->add_option("--q", good.q, "closed probability");
    good_window->add_option("--window-w", good.window_w, "window width in boxes");
    good_window->add_option("--window-h", good.window_h, "window height in boxes");
    good_window->add_option("--trials", good.trials, "Monte Carlo trials");
    good_window->add_option("--seed", good.seed, "master seed");
    good_window->add_option("--mem-budget-mb", good.mem_mb, "memory budget");
    goodcmd->require_subcommand(1);

    // ---- block -----------------------------------------------------------------
    struct {
        uint64_t seed = 1;
        bool sabotage = false;
        int blocks_x = 6, blocks_y = 3;
        double p_below = 0.012;
    } blk;
    CLI::App* block = app.add_subcommand("block", "build a staircase, find the path, verify blocking");
    block->add_option("--seed", blk.seed, "fixture seed");
    block->add_flag("--sabotage", blk.sabotage, "invalidate one protective rectangle");
    block->add_option("--blocks-x", blk.blocks_x, "window width in blocks");
    block->add_option("--blocks-y", blk.blocks_y, "window height in blocks");
    block->add_option("--p-below", blk.p_below, "occupied density below the structure");

    // ---- spread -----------------------------------------------------------------
    struct {
        uint64_t seed = 1;
        std::string side = "south";
        bool break_g2 = false;
    } spr;
    CLI::App* spread = app.add_subcommand("spread", "good-box spread check on a constructed fixture");
    spread->add_option("--seed", spr.seed, "fixture seed");
    spread->add_option("--side", spr.side, "north|south|east|west");
    spread->add_flag("--break-g2", spr.break_g2, "clear the column above the closed site");

    // ---- selftest -----------------------------------------------------------------
    CLI::App* selftest = app.add_subcommand("selftest", "run the invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*simulate) {
        Rule rule = parse_rule(sim.rule);
        BoundaryCondition bc = parse_bc(sim.bc);
        for (int t = 0; t < sim.trials; ++t) {
            uint64_t seed = derive_seed(sim.seed, uint64_t(SeedStream::Occupation), uint64_t(t));
            Grid g = sample(sim.L, sim.L, PollutionParams{sim.p, sim.q, seed}, bc);
            FinalGrid fin = closure(g, rule);
            ClusterSummary clusters = occupied_clusters(fin.grid);
            std::printf(
                "trial=%d L=%d rule=%s p=%.6g q=%.6g bc=%s seed=%llu\n"
                "  initial: occupied=%lld closed=%lld\n"
                "  final:   occupied=%lld steps=%d clusters=%lld max_linf_diameter=%d\n"
                "  center (%d,%d): %s\n",
                t, sim.L, std::string(rule_name(rule)).c_str(), sim.p, sim.q,
                sim.bc.c_str(), (unsigned long long)seed, (long long)g.occupied_count(),
                (long long)g.closed_count(), (long long)fin.grid.occupied_count(),
                fin.steps_to_fixpoint, (long long)clusters.cluster_count,
                clusters.max_linf_diameter, sim.L / 2, sim.L / 2,
                fin.grid.occupied(sim.L / 2, sim.L / 2) ? "occupied" : "not occupied");
        }
        return 0;
    }

    if (*render) {
        Rule rule = parse_rule(ren.rule);
        BoundaryCondition bc = parse_bc(ren.bc);
        RenderPalette palette;
        if (!ren.c_init.empty()) palette.initial_occupied = parse_color(ren.c_init, "--color-initial");
        if (!ren.c_event.empty()) palette.eventually_occupied = parse_color(ren.c_event, "--color-eventual");
        if (!ren.c_closed.empty()) palette.closed = parse_color(ren.c_closed, "--color-closed");
        if (!ren.c_open.empty()) palette.never_occupied_open = parse_color(ren.c_open, "--color-open");
        Grid initial = sample(ren.L, ren.L, PollutionParams{ren.p, ren.q, ren.seed}, bc);
        Grid fin = closure(initial, rule).grid;
        std::string bytes = render_p6(initial, fin, palette);
        write_file(ren.out, bytes);
        std::printf("wrote %s (%zu bytes, %dx%d)\n", ren.out.c_str(), bytes.size(), ren.L, ren.L);
        return 0;
    }

    if (*scan) {
        Rule rule = parse_rule(sc.rule);
        BoundaryCondition bc = parse_bc(sc.bc);
        int L = sc.L > 0 ? sc.L : default_box_side(sc.p, sc.mem_mb << 20);
        auto rows = scan_q(sc.p, sc.alphas, sc.beta, rule, L, bc, sc.trials, sc.seed);
        std::string csv = to_csv(rows, sc.timings);
        std::printf("# scan p=%.6g beta=%.3g rule=%s L=%d bc=%s trials=%d seed=%llu\n",
                    sc.p, sc.beta, std::string(rule_name(rule)).c_str(), L, sc.bc.c_str(),
                    sc.trials, (unsigned long long)sc.seed);
        if (sc.out.empty()) std::fputs(csv.c_str(), stdout);
        else {
            write_file(sc.out, csv);
            std::printf("wrote %s (%zu rows)\n", sc.out.c_str(), rows.size());
        }
        return 0;
    }

    if (*qccmd) {
        Rule rule = parse_rule(qc.rule);
        BoundaryCondition bc = parse_bc(qc.bc);
        int L = qc.L > 0 ? qc.L : default_box_side(qc.p, qc.mem_mb << 20);
        ThresholdResult res = estimate_qc(qc.p, rule, L, bc, qc.trials, qc.seed, qc.tol);
        std::printf("p=%.6g rule=%s L=%d trials=%d tol=%.3g\n", qc.p,
                    std::string(rule_name(rule)).c_str(), L, qc.trials, qc.tol);
        print_threshold("qc", res);
        return 0;
    }

    if (*compare) {
        BoundaryCondition bc = parse_bc(cmp.bc);
        auto rows = compare_rules(cmp.ps, bc, cmp.trials, cmp.seed, cmp.tol, cmp.mem_mb << 20);
        std::string out = "p,L,q_standard,std_lo,std_hi,q_modified,mod_lo,mod_hi,ratio\n";
        char buf[256];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%.10g,%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                          r.p, r.L, r.standard_rule.q_hat, r.standard_rule.lo,
                          r.standard_rule.hi, r.modified_rule.q_hat, r.modified_rule.lo,
                          r.modified_rule.hi, r.ratio);
            out += buf;
        }
        if (cmp.out.empty()) std::fputs(out.c_str(), stdout);
        else {
            write_file(cmp.out, out);
            std::printf("wrote %s (%zu rows)\n", cmp.out.c_str(), rows.size());
        }
        return 0;
    }

    if (*safecmd) {
        BlockGeometry geom = safe_geom.build();
        if (*safe_prob) {
            SafeProbEstimate est = estimate_safe_prob(
                geom, PollutionParams{safe_geom.p, safe.q, safe.seed}, safe.trials);
            std::printf("safe fraction=%.6g ci=[%.6g, %.6g] trials=%d (block %dx%d, "
                        "vrect %dx%d, hrect %dx%d)\n",
                        est.fraction, est.ci.lo, est.ci.hi, est.trials, geom.block_w,
                        geom.block_h, geom.m, geom.vrect_h, geom.hrect_w, geom.m);
            return 0;
        }
        Grid g = load_grid(safe.grid_file);
        auto cert = is_safe_block(g, {safe.zx, safe.zy}, geom);
        if (!cert) {
            std::printf("block (%d,%d): not safe\n", safe.zx, safe.zy);
            return 1;
        }
        std::printf("%s\n", cert->to_line().c_str());
        return 0;
    }

    if (*goodcmd) {
        GoodBoxParams gp = good_geom.build();
        if (*good_prob) {
            GoodProbEstimate est =
                estimate_good_prob(gp, PollutionParams{good_geom.p, good.q, good.seed}, good.trials);
            std::printf("good fraction=%.6g ci=[%.6g, %.6g] trials=%d side=%d\n",
                        est.fraction, est.ci.lo, est.ci.hi, est.trials, gp.side);
            for (int c = 0; c < 6; ++c)
                std::printf("  G%d failure fraction: %.6g\n", c + 1, est.condition_failure[size_t(c)]);
            return 0;
        }
        if (*good_check) {
            Grid g = load_grid(good.grid_file);
            Rect box = g.bounds();
            if (!good.box.empty()) {
                if (good.box.size() != 4) throw CliError{2, "--box needs x0,y0,w,h"};
                box = Rect{good.box[0], good.box[1], good.box[2], good.box[3]};
            }
            GoodReport rep = is_good_box(g, box, gp);
            for (int c = 0; c < 6; ++c)
                std::printf("G%d: %s\n", c + 1, rep.ok[size_t(c)] ? "ok" : "FAIL");
            std::printf("good: %s\n", rep.good ? "yes" : "no");
            return rep.good ? 0 : 1;
        }
        GoodWindowResult res = good_box_window(good_geom.p, good_geom.n, good.q,
                                               good.window_w, good.window_h, good.trials,
                                               good.seed, good.mem_mb << 20);
        std::printf("good density=%.6g largest component fraction=%.6g boxes=%d trials=%d\n",
                    res.good_density, res.largest_component_fraction, res.boxes, res.trials);
        return 0;
    }

    if (*block) {
        StaircaseParams params;
        params.blocks_x = blk.blocks_x;
        params.blocks_y = blk.blocks_y;
        params.p_below = blk.p_below;
        StaircaseFixture fx = blk.sabotage
                                  ? make_sabotaged_staircase_fixture(params, blk.seed)
                                  : make_staircase_fixture(params, blk.seed);
        std::printf("path of %zu blocks, %zu structure segments, %d attempt(s)\n",
                    fx.path.blocks.size(), fx.structure.segments.size(), fx.attempts_used);
        BlockingVerdict verdict = verify_blocking(fx.grid, fx.structure, params.m);
        switch (verdict.outcome) {
            case BlockingOutcome::Holds:
                std::printf("verdict: holds (final configurations agree off region A)\n");
                return 0;
            case BlockingOutcome::ClusterPreconditionFailed:
                std::printf("verdict: cluster-precondition-failed (max diameter %d > m/4)\n",
                            verdict.max_cluster_diameter);
                return 1;
            case BlockingOutcome::Violated:
                std::printf("verdict: violated at (%d,%d)\n", verdict.witness->x,
                            verdict.witness->y);
                return 1;
        }
        return 1;
    }

    if (*spread) {
        auto side = side_from_name(spr.side);
        if (!side) throw CliError{2, "unknown side: " + spr.side};
        GoodFixtureParams params;
        GoodBoxFixture fx = spr.break_g2 ? make_g2_broken_fixture(params, spr.seed)
                                         : make_good_box_fixture(params, spr.seed);
        bool filled = spread_fills(fx.grid, fx.box, *side);
        std::printf("closed site at (%d,%d), spread from %s: %s\n", fx.closed_site.x,
                    fx.closed_site.y, std::string(side_name(*side)).c_str(),
                    filled ? "fills every non-closed cell" : "leaves open cells");
        return filled ? 0 : 1;
    }

    if (*selftest) return run_selftest();

    return 2;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    try {
        std::vector<std::string> args;
        for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
        args = expand_config(std::move(args));
        std::vector<const char*> expanded{argc > 0 ? argv[0] : "pbplab"};
        for (const std::string& a : args) expanded.push_back(a.c_str());
        return run(int(expanded.size()), expanded.data());
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace pbp
