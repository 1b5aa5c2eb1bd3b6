#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pliable/family.hpp"
#include "pliable/report.hpp"

namespace pliable {

struct SignedTerm {
    int sign = 1;  // +1 or -1
    ESet set;

    bool operator==(const SignedTerm&) const = default;
};

// A formal signed multiset of sets.  Coefficients accumulate on add; the
// canonical term list drops zero coefficients, puts positive terms before
// negative ones, and orders each group by bit value with one entry per
// coefficient unit.
class Ledger {
public:
    void add(int sign, const ESet& s);

    int coefficient(const ESet& s) const;
    std::vector<SignedTerm> terms() const;
    bool operator==(const Ledger& o) const;

private:
    std::vector<std::pair<ESet, int>> coeff_;  // sorted by set
};

// For each crossing pair (A, B) the four-entry record {+A, +B, -(A-B),
// -(B-A)} summed over the list.  Throws when some pair does not cross.
Ledger ledger_sum(const std::vector<std::pair<ESet, ESet>>& pairs);

// The impossibility certificate for dimension k: 2k-3 crossing pairs whose
// summed ledgers collapse to {+V_1..+V_k, -{v_1}, -{v_2}, -W_3..-W_k}.
// The first list peels coordinate sets off V_1; the second peels the
// leftovers U_i = V_i - (V_1 - V_2 - ... - V_{i-1}) off V_2 - V_1, leaving
// the W_i residues.  Subtraction chains associate left to right.
struct Certificate {
    int k = 0;
    std::vector<std::pair<ESet, ESet>> first_list;   // k-1 pairs
    std::vector<std::pair<ESet, ESet>> second_list;  // k-2 pairs
    std::vector<ESet> u_sets;                        // U_3..U_k
    std::vector<ESet> w_sets;                        // W_3..W_k
    Ledger summed;

    std::vector<std::pair<ESet, ESet>> all_pairs() const;
    nlohmann::ordered_json to_json(const Family* f = nullptr) const;
};

Certificate build_certificate(int k);  // k >= 3

// Checks, against a family f over the same ground set:
//   1. every listed pair crosses;
//   2. V_1..V_k are members;
//   3. {v_1} and {v_2} are not members;
//   4. no W_i is a member;
//   5. each second-list left side loses exactly U_{i+2} to form the next;
//   6. the summed ledger equals the expected collapse, all coefficients
//      exactly +1 or -1;
//   7. V_1 - V_2 - ... - V_k = {v_1} and V_2 - V_1 - V_3 - ... - V_k = {v_2}.
ViolationReport verify_certificate(const Family& f, const Certificate& c);

}  // namespace pliable
