#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "pliable/config.hpp"
#include "pliable/family.hpp"

namespace pliable {

// Which of the two missing differences to stage when neither contains a
// unit vector; compares the numeric value of the bit vectors.
enum class TieBreak { MinBitmask, MaxBitmask };

std::string to_string(TieBreak t);

// Test seam: permutes the canonical pair list before one iteration scans
// it.  The staged sets of an iteration are order-independent (membership is
// tested against the iteration-start snapshot only), which property tests
// exercise through this hook; provenance attribution does depend on scan
// order, so the hook is not used outside tests.
using PairOrderHook =
    std::function<void(std::vector<std::pair<std::size_t, std::size_t>>&)>;

// Grows a family from the coordinate sets {V_1..V_k} to a fixed point.
// Each iteration scans every crossing pair {A, B} of the current snapshot
// and stages, for the next generation:
//   (a) A & B when absent;
//   (b) when both A - B and B - A are absent, exactly one of them:
//       (i)  both contain a unit vector: the one with the larger index,
//       (ii) exactly one does: the one without,
//       (iii) neither does: the tie-break's pick.
// Staged sets are deduplicated; the iteration's additions join the family
// only after the scan, and the loop stops on an empty iteration.
//
// The fixed point explodes with k (15 sets at k=3, 1509 at k=5, past a
// million at k=6), so member_budget > 0 caps members plus staged sets and
// throws BudgetError when the cap is hit mid-scan; 0 runs uncapped.
Family construct_family(int k, TieBreak tie_break = TieBreak::MinBitmask,
                        int max_k = limits::kDefaultMaxK,
                        const PairOrderHook& reorder = {},
                        long member_budget = 0);

}  // namespace pliable
