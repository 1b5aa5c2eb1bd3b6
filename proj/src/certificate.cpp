#include "pliable/certificate.hpp"

#include <algorithm>

namespace pliable {

void Ledger::add(int sign, const ESet& s) {
    if (sign != 1 && sign != -1) {
        throw Error("Ledger::add: sign must be +1 or -1");
    }
    auto it = std::lower_bound(
        coeff_.begin(), coeff_.end(), s,
        [](const auto& entry, const ESet& key) { return entry.first < key; });
    if (it != coeff_.end() && it->first == s) {
        it->second += sign;
        if (it->second == 0) coeff_.erase(it);
    } else {
        coeff_.insert(it, {s, sign});
    }
}

int Ledger::coefficient(const ESet& s) const {
    auto it = std::lower_bound(
        coeff_.begin(), coeff_.end(), s,
        [](const auto& entry, const ESet& key) { return entry.first < key; });
    if (it != coeff_.end() && it->first == s) return it->second;
    return 0;
}

std::vector<SignedTerm> Ledger::terms() const {
    std::vector<SignedTerm> out;
    for (const auto& [set, c] : coeff_) {
        if (c > 0) {
            for (int r = 0; r < c; ++r) out.push_back(SignedTerm{1, set});
        }
    }
    for (const auto& [set, c] : coeff_) {
        if (c < 0) {
            for (int r = 0; r < -c; ++r) out.push_back(SignedTerm{-1, set});
        }
    }
    return out;
}

bool Ledger::operator==(const Ledger& o) const { return coeff_ == o.coeff_; }

Ledger ledger_sum(const std::vector<std::pair<ESet, ESet>>& pairs) {
    Ledger sum;
    for (const auto& [a, b] : pairs) {
        if (!crosses(a, b)) {
            throw Error("ledger_sum: pair " + a.to_string() + ", " +
                        b.to_string() + " does not cross");
        }
        sum.add(1, a);
        sum.add(1, b);
        sum.add(-1, a - b);
        sum.add(-1, b - a);
    }
    return sum;
}

std::vector<std::pair<ESet, ESet>> Certificate::all_pairs() const {
    std::vector<std::pair<ESet, ESet>> out = first_list;
    out.insert(out.end(), second_list.begin(), second_list.end());
    return out;
}

Certificate build_certificate(int k) {
    if (k < 3) {
        throw Error("build_certificate: k must be at least 3, got " +
                    std::to_string(k));
    }
    GroundSet g(k);
    std::vector<ESet> coord;
    for (int i = 1; i <= k; ++i) coord.push_back(coordinate_set(g, i));
    auto v = [&](int i) { return coord[static_cast<std::size_t>(i - 1)]; };

    Certificate c;
    c.k = k;

    // first list: ((V_1 - V_2 - ... - V_i), V_{i+1}) for i = 1..k-1
    ESet chain = v(1);
    for (int i = 1; i <= k - 1; ++i) {
        c.first_list.emplace_back(chain, v(i + 1));
        chain = chain - v(i + 1);
    }

    // U_i = V_i - (V_1 - V_2 - ... - V_{i-1}) for i = 3..k
    ESet head = v(1);  // V_1 - ... - V_{i-1}, grown as i advances
    head = head - v(2);
    for (int i = 3; i <= k; ++i) {
        c.u_sets.push_back(v(i) - head);
        head = head - v(i);
    }
    auto u = [&](int i) { return c.u_sets[static_cast<std::size_t>(i - 3)]; };

    // second list: ((V_2 - V_1), U_3), then
    // ((V_2 - V_1 - V_3 - ... - V_{i+1}), U_{i+2}) for i = 2..k-2
    ESet left = v(2) - v(1);
    c.second_list.emplace_back(left, u(3));
    for (int i = 2; i <= k - 2; ++i) {
        left = left - v(i + 1);
        c.second_list.emplace_back(left, u(i + 2));
    }

    // W_3 = U_3 - (V_2 - V_1); W_i = U_i - ((V_2 - V_1) - V_3 - ... - V_{i-1})
    ESet w_head = v(2) - v(1);
    c.w_sets.push_back(u(3) - w_head);
    for (int i = 4; i <= k; ++i) {
        w_head = w_head - v(i - 1);
        c.w_sets.push_back(u(i) - w_head);
    }

    c.summed = ledger_sum(c.all_pairs());
    return c;
}

nlohmann::ordered_json Certificate::to_json(const Family* f) const {
    nlohmann::ordered_json doc;
    doc["k"] = k;
    auto pair_list = [&](const std::vector<std::pair<ESet, ESet>>& pairs) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [a, b] : pairs) {
            nlohmann::ordered_json entry;
            entry["a"] = eset_to_json(a);
            entry["b"] = eset_to_json(b);
            entry["intersection"] = eset_to_json(a & b);
            entry["union"] = eset_to_json(a | b);
            entry["a_minus_b"] = eset_to_json(a - b);
            entry["b_minus_a"] = eset_to_json(b - a);
            arr.push_back(std::move(entry));
        }
        return arr;
    };
    doc["first_list"] = pair_list(first_list);
    doc["second_list"] = pair_list(second_list);
    doc["u_sets"] = nlohmann::ordered_json::array();
    for (const ESet& s : u_sets) doc["u_sets"].push_back(eset_to_json(s));
    doc["w_sets"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < w_sets.size(); ++i) {
        nlohmann::ordered_json entry;
        entry["index"] = i + 3;
        entry["elements"] = eset_to_json(w_sets[i]);
        if (f != nullptr) entry["member"] = f->contains(w_sets[i]);
        doc["w_sets"].push_back(std::move(entry));
    }
    doc["canceled_sum"] = nlohmann::ordered_json::array();
    for (const SignedTerm& t : summed.terms()) {
        nlohmann::ordered_json entry;
        entry["sign"] = t.sign;
        entry["elements"] = eset_to_json(t.set);
        if (f != nullptr) entry["member"] = f->contains(t.set);
        doc["canceled_sum"].push_back(std::move(entry));
    }
    return doc;
}

ViolationReport verify_certificate(const Family& f, const Certificate& c) {
    ViolationReport report{"certificate", true, {}};
    const GroundSet& g = f.ground();
    if (g.k() != c.k) {
        throw GroundMismatchError(
            "verify_certificate: family and certificate dimensions differ");
    }
    auto fail = [&](std::vector<ESet> sets, std::vector<ESet> missing,
                    std::string note) {
        report.ok = false;
        report.witnesses.push_back(
            Witness{{}, std::move(sets), std::move(missing), std::move(note)});
    };

    // (1) every pair crosses
    for (const auto& [a, b] : c.all_pairs()) {
        if (!crosses(a, b)) {
            fail({a, b}, {}, "certificate pair does not cross");
        }
    }

    // (2) the coordinate sets are members
    std::vector<ESet> coord;
    for (int i = 1; i <= c.k; ++i) coord.push_back(coordinate_set(g, i));
    for (const ESet& v : coord) {
        if (!f.contains(v)) fail({}, {v}, "coordinate set is not a member");
    }

    // (3) the two unit singletons are non-members
    for (int i : {1, 2}) {
        ESet s = ESet::singleton(g, g.unit_vector(i));
        if (f.contains(s)) {
            fail({s}, {}, "{v_" + std::to_string(i) + "} must not be a member");
        }
    }

    // (4) no W_i is a member
    for (std::size_t i = 0; i < c.w_sets.size(); ++i) {
        if (f.contains(c.w_sets[i])) {
            fail({c.w_sets[i]}, {},
                 "W_" + std::to_string(i + 3) + " must not be a member");
        }
    }

    // (5) successive second-list left sides differ by exactly U_{i+2}
    for (std::size_t i = 0; i + 1 < c.second_list.size(); ++i) {
        ESet expected = c.second_list[i].first - c.u_sets[i];
        // the next left side also subtracts V_{i+2}; both give the same set
        // because U_{i+2} covers exactly the V_{i+2} part of the left side
        ESet actual = c.second_list[i + 1].first;
        if (expected != actual) {
            fail({c.second_list[i].first}, {expected},
                 "second-list chain breaks at position " + std::to_string(i));
        }
    }
    if (!c.second_list.empty()) {
        ESet tail = c.second_list.back().first - c.u_sets.back();
        ESet expected_tail = ESet::singleton(g, g.unit_vector(2));
        if (tail != expected_tail) {
            fail({c.second_list.back().first}, {expected_tail},
                 "final second-list subtraction misses {v_2}");
        }
    }

    // (6) the summed ledger collapses exactly as announced
    Ledger expected;
    for (const ESet& v : coord) expected.add(1, v);
    expected.add(-1, ESet::singleton(g, g.unit_vector(1)));
    expected.add(-1, ESet::singleton(g, g.unit_vector(2)));
    for (const ESet& w : c.w_sets) expected.add(-1, w);
    if (!(c.summed == expected)) {
        fail({}, {}, "canceled sum differs from the expected collapse");
    }
    for (const SignedTerm& t : c.summed.terms()) {
        int coeff = c.summed.coefficient(t.set);
        if (coeff != 1 && coeff != -1) {
            fail({t.set}, {},
                 "coefficient " + std::to_string(coeff) + " is not a unit");
        }
    }

    // (7) the two full subtraction chains end in unit singletons
    ESet chain1 = coord[0];
    for (int i = 2; i <= c.k; ++i) chain1 = chain1 - coord[static_cast<std::size_t>(i - 1)];
    if (chain1 != ESet::singleton(g, g.unit_vector(1))) {
        fail({chain1}, {ESet::singleton(g, g.unit_vector(1))},
             "V_1 minus the other coordinate sets is not {v_1}");
    }
    ESet chain2 = coord[1] - coord[0];
    for (int i = 3; i <= c.k; ++i) chain2 = chain2 - coord[static_cast<std::size_t>(i - 1)];
    if (chain2 != ESet::singleton(g, g.unit_vector(2))) {
        fail({chain2}, {ESet::singleton(g, g.unit_vector(2))},
             "V_2 minus the other coordinate sets is not {v_2}");
    }

    return report;
}

}  // namespace pliable
