#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pliable/config.hpp"
#include "pliable/family.hpp"
#include "pliable/report.hpp"

namespace pliable {

// Membership test used by every property below: derived sets equal to {}
// or V never count, whatever the family contains.
bool counts_as_member(const Family& f, const ESet& s);

// For every unordered pair of distinct members {A, B}, at least two of
// A&B, A|B, A-B, B-A are members.  All pairs are checked, crossing or not.
ViolationReport is_pliable(const Family& f);

// For every crossing pair, at least one of {A&B, A|B} and at least one of
// {A-B, B-A} are members.
ViolationReport is_structurally_submodular(const Family& f);

// For every unordered pair of distinct members, both A&B and A|B are
// members or both A-B and B-A are.  All pairs are checked.
ViolationReport is_uncrossable(const Family& f);

// For every triple (C, S1, S2) of members with S1 a proper subset of S2,
// C inclusion-wise minimal in f, and C crossing both S1 and S2, the set
// S2 - (S1 | C) is empty or a member.
ViolationReport satisfies_gamma(const Family& f);

// Structural checks for families grown by construct_family:
//   1. every member lies inside some coordinate set V_i;
//   2. every member holds at most one unit vector, and one holding v_{i}
//      lies inside V_i;
//   3. a member holding v_{i} also holds v_I for every I = {i} with any
//      coordinates above i added, hence has at least 2^(k-i) elements;
//   4. no {v_{i}} is a member for i < k;
//   5. no V_i - V_j is a member for i < j;
//   6. no member holds v_{i} and v_{[k]} while missing v_{1,i}, for any
//      i in {3..k}.
// An empty family passes vacuously; otherwise generation 0 must be exactly
// {V_1..V_k} or the call throws.
ViolationReport validate_construction(const Family& f);

// One coordinate-set pair that no uncrossable subfamily may keep together:
// V_i | V_j is not a member and neither is V_i - V_j, so both clauses of
// the uncrossable condition fail for any subfamily containing V_i and V_j.
struct ConflictWitnessEntry {
    std::size_t vi;   // member index of V_i
    std::size_t vj;   // member index of V_j, i < j
    ESet union_set;
    ESet difference_set;  // V_i - V_j
    bool union_absent;
    bool difference_absent;
};

// All k*(k-1)/2 coordinate-set pairs with their two non-membership facts.
// Throws when generation 0 is not exactly {V_1..V_k}.
std::vector<ConflictWitnessEntry> conflict_witness(const Family& f);

// Exhaustive search for a partition of the members into at most d blocks,
// each an uncrossable family on its own.  Returns the blocks as sorted
// member-index lists, or nullopt when no such partition exists.  Throws
// BudgetError when the node budget runs out before either answer.
std::optional<std::vector<std::vector<std::size_t>>> partition_uncrossable(
    const Family& f, int d,
    long node_budget = limits::kDefaultPartitionNodeBudget);

}  // namespace pliable
