#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pliable/config.hpp"
#include "pliable/family.hpp"
#include "pliable/rational.hpp"

namespace pliable {

// How the input family is promoted to the complement-closed family the
// variables quantify over: literal refuses families that are not
// complement-closed; complemented closes them by adding every complement.
enum class RealizeMode { Literal, Complemented };

std::string to_string(RealizeMode m);

struct LpLimits {
    int max_k = limits::kDefaultLpMaxK;
    long max_rows = limits::kDefaultLpMaxRows;
    long pivot_budget = limits::kDefaultLpPivotBudget;
};

// One linear constraint sum(coeff * var) >= rhs.  Variable 0 is the
// threshold lambda; every other variable is one complement class {S, V-S},
// shared because candidate witnesses are symmetric (g(S) = g(V-S)).
struct LPRow {
    enum class Kind { Submodularity, Membership, NonMembership };
    Kind kind;
    ESet a;  // Submodularity: first set; thresholds: the class representative
    ESet b;  // Submodularity only: second set
    std::vector<std::pair<std::size_t, Rational>> coeffs;  // sorted by var
    Rational rhs;
};

constexpr std::size_t kLambdaVar = 0;

// The realizability feasibility system.  Submodularity rows quantify over
// unordered incomparable pairs of arbitrary subsets; membership rows pin
// g(S) <= lambda - 1 on the closed family and g(S) >= lambda off it.  The
// gap of 1 is a harmless normalization of the strict inequalities: any
// witness of the open system scales onto it, and any solution here is one.
// The {.., V} class keeps its shared variable but gets no threshold row;
// the empty set and V stand outside the family by convention, and a
// threshold row for them would contradict ordinary submodular witnesses
// (two disjoint members with a non-member union already force
// g({}) < lambda).
class LPProblem {
public:
    explicit LPProblem(GroundSet g, RealizeMode mode);

    const GroundSet& ground() const { return ground_; }
    RealizeMode mode() const { return mode_; }
    std::size_t variable_count() const { return class_reps_.size() + 1; }
    std::size_t class_count() const { return class_reps_.size(); }
    const std::vector<LPRow>& rows() const { return rows_; }
    // Class representative (numerically smaller of S and V-S) for var > 0.
    const ESet& class_rep(std::size_t var) const;
    std::size_t var_of(const ESet& s);                 // registers on demand
    std::optional<std::size_t> find_var(const ESet& s) const;

    // Row builders; return the row index.  The difference form
    // g(A)+g(B) >= g(A-B)+g(B-A) is the intersection form for (A, V-B)
    // under complement sharing, and is stored that way.
    std::size_t add_submodularity_row(const ESet& a, const ESet& b);
    std::size_t add_difference_row(const ESet& a, const ESet& b);
    std::size_t add_membership_row(const ESet& s);     // g(S) <= lambda - 1
    std::size_t add_nonmembership_row(const ESet& s);  // g(S) >= lambda

    std::optional<std::size_t> find_submodularity_row(const ESet& a,
                                                      const ESet& b) const;
    std::optional<std::size_t> find_membership_row(const ESet& s) const;
    std::optional<std::size_t> find_nonmembership_row(const ESet& s) const;

private:
    GroundSet ground_;
    RealizeMode mode_;
    std::vector<ESet> class_reps_;  // var i+1 <-> class_reps_[i]
    std::unordered_map<ESet, std::size_t, ESet::Hash> var_index_;
    std::vector<LPRow> rows_;
};

// The input family is not complement-closed, so no symmetric function can
// have it as a sublevel family; witness is the first member whose
// complement is missing.
struct TrivialRejection {
    ESet witness;
    std::string reason;
};

struct FarkasCertificate {
    // One multiplier per problem row, almost all zero.  Validity:
    // multipliers >= 0, the weighted coefficient sum vanishes on every
    // variable, and the weighted right-hand sides add to something
    // positive, i.e. the rows combine to 0 >= positive.
    std::vector<Rational> multipliers;
};

struct LpFeasible {
    std::vector<Rational> values;  // indexed by variable, [0] = lambda
};

struct LpInfeasible {
    FarkasCertificate certificate;
};

struct LpBudgetExhausted {
    long pivots = 0;
    std::string detail;
};

using LPOutcome = std::variant<LpFeasible, LpInfeasible, LpBudgetExhausted>;

// Materializes the full system for f's ground set: one threshold row per
// complement class except {{}, V}, one submodularity row per unordered
// incomparable subset pair.  Literal mode returns a TrivialRejection
// instead when f is not complement-closed.  Throws when 2^k exceeds
// lim.max_k or the row count would pass lim.max_rows.
std::variant<LPProblem, TrivialRejection> build_realizability_lp(
    const Family& f, RealizeMode mode, const LpLimits& lim = {});

// Exact Phase-I simplex (artificial variables on the rows violated at the
// origin, Bland's rule) inside an outer working-set loop: rows enter the
// working set only when the current point violates them, so the dense
// tableau stays near the threshold-row count instead of the full
// submodularity enumeration.  Feasible answers are re-checked against
// every row and infeasible answers against verify_farkas before returning.
LPOutcome solve_feasibility(const LPProblem& p, const LpLimits& lim = {});

bool verify_farkas(const LPProblem& p, const FarkasCertificate& c);

// True when the assignment satisfies every row exactly.
bool satisfies_all_rows(const LPProblem& p, const std::vector<Rational>& x);

}  // namespace pliable
