#include "pbp/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "pbp/certificates.hpp"
#include "pbp/rng.hpp"

namespace pbp {

void TrialSpec::validate() const {
    if (L < 1) throw std::invalid_argument("TrialSpec: L must be >= 1");
    if (trials < 1) throw std::invalid_argument("TrialSpec: trials must be >= 1");
    PollutionParams{p, q, master_seed}.validate();
    Coord t = effective_target();
    if (t.x < 0 || t.x >= L || t.y < 0 || t.y >= L)
        throw std::invalid_argument("TrialSpec: target outside the box");
}

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

ScanRow make_row(double p, double q, double beta, Rule rule, int L, int trials,
                 int hits, double seconds) {
    ScanRow row;
    row.p = p;
    row.q = q;
    row.alpha = (p > 0 && p < 1) ? q * std::log(1.0 / p) / (p * p) : 0.0;
    row.beta = beta;
    row.rule = rule;
    row.L = L;
    row.trials = trials;
    row.hits = hits;
    row.fraction = double(hits) / trials;
    Interval ci = wilson95(hits, trials);
    row.ci_low = ci.lo;
    row.ci_high = ci.hi;
    row.seconds = seconds;
    return row;
}

}  // namespace

ScanRow estimate_occupation(const TrialSpec& spec) {
    spec.validate();
    const Coord target = spec.effective_target();
    const double t0 = now_seconds();
    int hits = 0;
    for (int t = 0; t < spec.trials; ++t) {
        PollutionParams params{spec.p, spec.q,
                               derive_seed(spec.master_seed,
                                           uint64_t(SeedStream::Occupation), uint64_t(t))};
        Grid g = sample(spec.L, spec.L, params, spec.bc);
        if (eventually_occupied(g, spec.rule, target)) ++hits;
    }
    return make_row(spec.p, spec.q, 0.0, spec.rule, spec.L, spec.trials, hits,
                    now_seconds() - t0);
}

std::vector<ScanRow> scan_q(double p, std::span<const double> alphas, double beta,
                            Rule rule, int L, BoundaryCondition bc, int trials,
                            uint64_t master_seed) {
    if (L < 1 || trials < 1) throw std::invalid_argument("scan_q: bad L or trials");
    const double logp = std::log(1.0 / p);
    std::vector<double> qs;
    for (double alpha : alphas) {
        double q = alpha * p * p / std::pow(logp, beta);
        PollutionParams{p, q, master_seed}.validate();
        qs.push_back(q);
    }
    std::vector<int> hits(qs.size(), 0);
    std::vector<double> secs(qs.size(), 0.0);
    const Coord target{L / 2, L / 2};
    for (int t = 0; t < trials; ++t) {
        uint64_t seed = derive_seed(master_seed, uint64_t(SeedStream::ScanQ), uint64_t(t));
        std::vector<Grid> grids = sample_coupled(L, L, p, qs, seed, bc);
        for (size_t i = 0; i < grids.size(); ++i) {
            const double t0 = now_seconds();
            if (eventually_occupied(grids[i], rule, target)) ++hits[i];
            secs[i] += now_seconds() - t0;
        }
    }
    std::vector<ScanRow> rows;
    for (size_t i = 0; i < qs.size(); ++i) {
        ScanRow row = make_row(p, qs[i], beta, rule, L, trials, hits[i], secs[i]);
        row.alpha = alphas[i];
        rows.push_back(row);
    }
    return rows;
}

ThresholdResult bisect_threshold(
    const std::function<double(double q, int trials)>& fraction, double q_max,
    int base_trials, int max_trials, double tol) {
    if (!(q_max > 0) || base_trials < 1 || max_trials < base_trials || !(tol > 0))
        throw std::invalid_argument("bisect_threshold: bad parameters");

    ThresholdResult res;
    // Trials escalate while the score interval straddles 1/2; the final
    // midpoint decides.
    auto above_half = [&](double q) {
        int n = base_trials;
        for (;;) {
            double f = fraction(q, n);
            ++res.evaluations;
            Interval ci = wilson95(int64_t(std::lround(f * n)), n);
            if (!ci.contains(0.5) || n >= max_trials) return f > 0.5;
            n = std::min(2 * n, max_trials);
        }
    };

    if (!above_half(0.0)) {
        res.no_threshold = true;
        return res;
    }
    if (above_half(q_max)) {
        // Fraction stays above 1/2 on the whole admissible range.
        res.q_hat = q_max;
        res.lo = res.hi = q_max;
        return res;
    }
    double lo = 0.0, hi = q_max;
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol * mid) break;
        if (above_half(mid)) lo = mid;
        else hi = mid;
    }
    res.q_hat = 0.5 * (lo + hi);
    res.lo = lo;
    res.hi = hi;
    return res;
}

ThresholdResult estimate_qc(double p, Rule rule, int L, BoundaryCondition bc,
                            int trials, uint64_t master_seed, double tol) {
    if (L < 1 || trials < 1) throw std::invalid_argument("estimate_qc: bad L or trials");
    PollutionParams{p, 0.0, master_seed}.validate();
    const Coord target{L / 2, L / 2};
    // Coupled trials: per-trial uniforms are fixed by the trial seed alone,
    // so the estimated fraction is exactly non-increasing in q.
    auto fraction = [&](double q, int n) {
        int hits = 0;
        for (int t = 0; t < n; ++t) {
            uint64_t seed =
                derive_seed(master_seed, uint64_t(SeedStream::Threshold), uint64_t(t));
            Grid g = sample(L, L, PollutionParams{p, q, seed}, bc);
            if (eventually_occupied(g, rule, target)) ++hits;
        }
        return double(hits) / n;
    };
    return bisect_threshold(fraction, 1.0 - p, trials, 8 * trials, tol);
}

std::vector<RuleComparisonRow> compare_rules(std::span<const double> ps,
                                             BoundaryCondition bc, int trials,
                                             uint64_t master_seed, double tol,
                                             uint64_t mem_budget_bytes) {
    std::vector<RuleComparisonRow> rows;
    for (double p : ps) {
        RuleComparisonRow row;
        row.p = p;
        row.L = default_box_side(p, mem_budget_bytes);
        row.standard_rule = estimate_qc(p, Rule::Standard, row.L, bc, trials, master_seed, tol);
        row.modified_rule = estimate_qc(p, Rule::Modified, row.L, bc, trials, master_seed, tol);
        row.ratio = row.modified_rule.q_hat > 0
                        ? row.standard_rule.q_hat / row.modified_rule.q_hat
                        : 0.0;
        rows.push_back(row);
    }
    return rows;
}

GoodWindowResult good_box_window(double p, int n, double q, int window_w,
                                 int window_h, int trials, uint64_t master_seed,
                                 uint64_t mem_budget_bytes) {
    if (window_w < 1 || window_h < 1 || trials < 1)
        throw std::invalid_argument("good_box_window: bad window or trials");
    const GoodBoxParams gp = GoodBoxParams::from_p(n, p);
    const uint64_t w = uint64_t(gp.side) * uint64_t(window_w);
    const uint64_t h = uint64_t(gp.side) * uint64_t(window_h);
    const uint64_t bytes = w * h / 4 + 64;  // two bit-planes
    if (bytes > mem_budget_bytes) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "good_box_window: %llu x %llu cells (~%llu MiB) exceeds the "
                      "memory budget of %llu MiB",
                      (unsigned long long)w, (unsigned long long)h,
                      (unsigned long long)(bytes >> 20),
                      (unsigned long long)(mem_budget_bytes >> 20));
        throw std::length_error(msg);
    }

    GoodWindowResult res;
    res.boxes = window_w * window_h;
    res.trials = trials;
    double density_sum = 0.0, component_sum = 0.0;
    std::vector<uint8_t> good(size_t(window_w) * size_t(window_h));
    for (int t = 0; t < trials; ++t) {
        PollutionParams params{
            p, q, derive_seed(master_seed, uint64_t(SeedStream::GoodWindow), uint64_t(t))};
        Grid g = sample(int(w), int(h), params, BoundaryCondition::Free);
        int count = 0;
        for (int by = 0; by < window_h; ++by)
            for (int bx = 0; bx < window_w; ++bx) {
                Rect box{bx * gp.side, by * gp.side, gp.side, gp.side};
                bool ok = is_good_box(g, box, gp).good;
                good[size_t(by) * size_t(window_w) + size_t(bx)] = ok ? 1 : 0;
                count += ok ? 1 : 0;
            }
        density_sum += double(count) / res.boxes;

        // largest 4-connected component of good boxes
        std::vector<int> stack;
        std::vector<uint8_t> seen(good.size(), 0);
        int largest = 0;
        for (int i = 0; i < int(good.size()); ++i) {
            if (!good[size_t(i)] || seen[size_t(i)]) continue;
            int size = 0;
            stack.assign(1, i);
            seen[size_t(i)] = 1;
            while (!stack.empty()) {
                int c = stack.back();
                stack.pop_back();
                ++size;
                int cx = c % window_w, cy = c / window_w;
                const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                for (auto& d : nb) {
                    int nx = cx + d[0], ny = cy + d[1];
                    if (nx < 0 || nx >= window_w || ny < 0 || ny >= window_h) continue;
                    int j = ny * window_w + nx;
                    if (good[size_t(j)] && !seen[size_t(j)]) {
                        seen[size_t(j)] = 1;
                        stack.push_back(j);
                    }
                }
            }
            largest = std::max(largest, size);
        }
        component_sum += double(largest) / res.boxes;
    }
    res.good_density = density_sum / trials;
    res.largest_component_fraction = component_sum / trials;
    return res;
}

int default_box_side(double p, uint64_t mem_budget_bytes) {
    if (!(p > 0) || !(p < 1)) throw std::invalid_argument("default_box_side: p in (0,1)");
    double L = std::ceil(8.0 * (1.0 / p) * std::log(1.0 / p));
    double cap = std::floor(std::sqrt(double(mem_budget_bytes) * 4.0));
    return int(std::max(1.0, std::min(L, cap)));
}

uint64_t memory_budget_bytes() {
    const char* env = std::getenv("PBPLAB_MEM_BUDGET_MB");
    if (env) {
        char* end = nullptr;
        unsigned long long mb = std::strtoull(env, &end, 10);
        if (end != env && mb > 0) return uint64_t(mb) << 20;
    }
    return uint64_t(1024) << 20;
}

std::string to_csv(std::span<const ScanRow> rows, bool include_timings) {
    std::string out = "p,q,alpha,beta,rule,L,trials,hits,fraction,ci_low,ci_high,seconds\n";
    char buf[256];
    for (const ScanRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%s,%d,%d,%d,%.10g,%.10g,%.10g,%.6f\n",
                      r.p, r.q, r.alpha, r.beta, std::string(rule_name(r.rule)).c_str(),
                      r.L, r.trials, r.hits, r.fraction, r.ci_low, r.ci_high,
                      include_timings ? r.seconds : 0.0);
        out += buf;
    }
    return out;
}

}  // namespace pbp
