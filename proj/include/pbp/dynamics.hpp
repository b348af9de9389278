#pragma once

#include <optional>
#include <string_view>

#include "pbp/grid.hpp"

namespace pbp {

/// Update rules. Occupied and closed cells never change; an open cell
/// becomes occupied when, among its four nearest neighbors:
///   Standard              - at least two are occupied,
///   Modified              - one to the east or west and one to the north
///                           or south are occupied,
///   ModifiedPlusVertical  - the Modified condition holds, or both the
///                           north and south neighbors are occupied.
enum class Rule : uint8_t { Standard = 0, Modified = 1, ModifiedPlusVertical = 2 };

inline constexpr Rule kAllRules[] = {Rule::Standard, Rule::Modified,
                                     Rule::ModifiedPlusVertical};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

// Neighbor predicate on the current configuration; out-of-grid neighbors
// count as never occupied (free boundary). Does not look at the state of
// (x, y) itself.
bool rule_fires(const Grid& g, int x, int y, Rule r);

struct FinalGrid {
    Grid grid;
    int steps_to_fixpoint = 0;  // synchronous rounds until nothing changes
};

/// One synchronous update: every open cell whose predicate holds on `g`
/// becomes occupied; everything else is unchanged.
Grid step(const Grid& g, Rule r);

/// Least fixpoint containing the occupied set of `g`. Production path:
/// a frontier queue seeded with the initially occupied cells, re-examining
/// only the neighbors of newly occupied cells, processed in synchronous
/// rounds so steps_to_fixpoint matches the naive sweep count.
FinalGrid closure(const Grid& g, Rule r);

/// Reference implementation: repeats full-grid synchronous steps until
/// nothing changes. Kept free of the frontier machinery so it can serve
/// as the confluence oracle for closure().
FinalGrid closure_naive(const Grid& g, Rule r);

/// True iff `x` is occupied in closure(g, r).
bool eventually_occupied(const Grid& g, Rule r, Coord x);

/// True iff all four neighbors of the closed cell `x` are occupied in
/// closure(g, r). Requires x and all four neighbors in bounds and x closed;
/// violations raise std::invalid_argument.
bool is_eliminable(const Grid& g, Rule r, Coord x);

/// Returns `g` with the eliminable closed cell `x` set to occupied.
/// Raises std::logic_error if is_eliminable(g, r, x) is false.
Grid eliminate(const Grid& g, Rule r, Coord x);

}  // namespace pbp
