#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbp/dynamics.hpp"
#include "pbp/grid.hpp"
#include "pbp/sample.hpp"
#include "pbp/stats.hpp"

namespace pbp {

// Stream ids for derive_seed(master, stream, trial); one per experiment kind
// so reusing a master seed across experiments cannot alias trials.
enum class SeedStream : uint64_t {
    Occupation = 1,
    ScanQ = 2,
    Threshold = 3,
    SafeProb = 4,
    GoodProb = 5,
    GoodWindow = 6,
    Staircase = 7,
    GoodFixture = 8,
};

/// Finite-window surrogate for "the origin is eventually occupied": an L x L
/// box whose target cell (default the center) is checked in the closure.
struct TrialSpec {
    Rule rule = Rule::Modified;
    int L = 64;
    double p = 0.0;
    double q = 0.0;
    BoundaryCondition bc = BoundaryCondition::Free;
    int trials = 100;
    uint64_t master_seed = 0;
    std::optional<Coord> target;  // default: center (L/2, L/2)

    Coord effective_target() const { return target.value_or(Coord{L / 2, L / 2}); }
    void validate() const;
};

struct ScanRow {
    double p = 0.0;
    double q = 0.0;
    double alpha = 0.0;  // q * log(1/p) / p^2 when p in (0,1), else 0
    double beta = 0.0;   // exponent label of the scan axis
    Rule rule = Rule::Modified;
    int L = 0;
    int trials = 0;
    int hits = 0;
    double fraction = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double seconds = 0.0;  // wall time; excluded from CSV unless requested
};

/// Monte Carlo estimate of P(target eventually occupied); deterministic
/// given the TrialSpec, one derived seed per trial.
ScanRow estimate_occupation(const TrialSpec& spec);

/// One row per alpha with q = alpha * p^2 / log(1/p)^beta. All alphas share
/// per-trial uniforms (coupled), so fractions are non-increasing in alpha
/// sample by sample, not just in expectation.
std::vector<ScanRow> scan_q(double p, std::span<const double> alphas, double beta,
                            Rule rule, int L, BoundaryCondition bc, int trials,
                            uint64_t master_seed);

struct ThresholdResult {
    double q_hat = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool no_threshold = false;  // fraction at q = 0 already below 1/2
    int evaluations = 0;
};

/// Bisection for the q where `fraction(q, trials)` crosses 1/2, for a
/// monotone non-increasing fraction. When the score interval at the probe
/// straddles 1/2 the trial count is doubled up to `max_trials`, then the
/// midpoint decides. Stops when hi - lo <= tol * midpoint.
ThresholdResult bisect_threshold(
    const std::function<double(double q, int trials)>& fraction, double q_max,
    int base_trials, int max_trials, double tol);

/// Monte Carlo threshold on q for the given rule: coupled trials (the same
/// per-trial uniforms at every probed q) make the estimated fraction exactly
/// monotone, so bisection is well behaved.
ThresholdResult estimate_qc(double p, Rule rule, int L, BoundaryCondition bc,
                            int trials, uint64_t master_seed, double tol);

struct RuleComparisonRow {
    double p = 0.0;
    int L = 0;
    ThresholdResult standard_rule;
    ThresholdResult modified_rule;
    double ratio = 0.0;  // q_hat(standard) / q_hat(modified); 0 if undefined
};

/// Threshold comparison between the standard and modified rules at each p,
/// both rules at the same default L and with the same master seed.
std::vector<RuleComparisonRow> compare_rules(std::span<const double> ps,
                                             BoundaryCondition bc, int trials,
                                             uint64_t master_seed, double tol,
                                             uint64_t mem_budget_bytes);

struct GoodWindowResult {
    double good_density = 0.0;
    double largest_component_fraction = 0.0;
    int boxes = 0;
    int trials = 0;
};

/// Samples grids covering a window_w x window_h window of good-box
/// candidates (side from GoodBoxParams derivation at (n, p)), marks good
/// boxes and reports mean good density and mean largest 4-connected
/// component fraction. Refuses with std::length_error when the grid would
/// exceed the memory budget.
GoodWindowResult good_box_window(double p, int n, double q, int window_w,
                                 int window_h, int trials, uint64_t master_seed,
                                 uint64_t mem_budget_bytes);

/// Default box side for threshold work: ceil(8 * (1/p) * log(1/p)), capped
/// so two bit-planes fit in the memory budget.
int default_box_side(double p, uint64_t mem_budget_bytes);

/// Memory budget in bytes: PBPLAB_MEM_BUDGET_MB from the environment, or
/// 1024 MiB when unset/invalid.
uint64_t memory_budget_bytes();

/// CSV with the ScanRow schema: header
/// p,q,alpha,beta,rule,L,trials,hits,fraction,ci_low,ci_high,seconds
/// and '\n' line endings. Timing is written as 0 unless include_timings is
/// set, keeping reruns byte-identical.
std::string to_csv(std::span<const ScanRow> rows, bool include_timings = false);

}  // namespace pbp
