#pragma once

namespace pliable::limits {

// Largest dimension accepted by construct_family and friends unless the
// caller raises it explicitly.  The cap is a validated argument, not a
// representation limit: ESet widths scale with 2^k.
inline constexpr int kDefaultMaxK = 6;

// Largest dimension for which the full realizability LP is materialized.
// The row count grows as the square of 2^(2^k), so k = 4 already needs
// ~2*10^9 submodularity rows; partial problems can be assembled at any k.
inline constexpr int kDefaultLpMaxK = 3;

// Hard cap on the number of rows a full LP build may emit.
inline constexpr long kDefaultLpMaxRows = 2'000'000;

// Simplex pivot budget across one solve_feasibility call.
inline constexpr long kDefaultLpPivotBudget = 1'000'000;

// Backtracking node budget for partition_uncrossable.
inline constexpr long kDefaultPartitionNodeBudget = 10'000'000;

// Reads a long from the named environment variable, falling back when the
// variable is unset or unparsable.  Command-line flags take precedence over
// these overrides; the CLI applies them in that order.
long env_override(const char* name, long fallback);

}  // namespace pliable::limits
