#pragma once

namespace pbp {

/// Command-line entry point. Subcommands: simulate, render, scan, qc,
/// compare, safe, good, block, spread, selftest. Returns 0 on success, 1 on
/// verification failure, 2 on usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace pbp
