#pragma once

namespace pbp {

/// Runs the invariant suites (confluence, monotonicity, domination,
/// symmetry, elimination, cluster labeling, sampling determinism and the
/// certificate fixtures), printing one line per suite. Returns 0 when every
/// suite passes, 1 otherwise.
int run_selftest();

}  // namespace pbp
