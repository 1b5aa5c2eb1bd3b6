#include "pliable/checkers.hpp"

#include <algorithm>
#include <numeric>

namespace pliable {

bool counts_as_member(const Family& f, const ESet& s) {
    return !s.none() && !s.all() && f.contains(s);
}

ViolationReport is_pliable(const Family& f) {
    ViolationReport report{"pliable", true, {}};
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const ESet& a = f[i].set;
            const ESet& b = f[j].set;
            ESet derived[4] = {a & b, a | b, a - b, b - a};
            int present = 0;
            std::vector<ESet> missing;
            for (ESet& d : derived) {
                if (counts_as_member(f, d)) {
                    ++present;
                } else {
                    missing.push_back(std::move(d));
                }
            }
            if (present < 2) {
                report.ok = false;
                report.witnesses.push_back(Witness{
                    {i, j}, {a, b}, std::move(missing),
                    "only " + std::to_string(present) +
                        " of the four derived sets are members"});
            }
        }
    }
    return report;
}

ViolationReport is_structurally_submodular(const Family& f) {
    ViolationReport report{"structural", true, {}};
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const ESet& a = f[i].set;
            const ESet& b = f[j].set;
            if (!crosses(a, b)) continue;
            ESet inter = a & b;
            ESet uni = a | b;
            ESet ab = a - b;
            ESet ba = b - a;
            bool has_lattice = counts_as_member(f, inter) || counts_as_member(f, uni);
            bool has_diff = counts_as_member(f, ab) || counts_as_member(f, ba);
            if (has_lattice && has_diff) continue;
            report.ok = false;
            std::vector<ESet> missing;
            std::string note;
            if (!has_lattice) {
                missing.push_back(std::move(inter));
                missing.push_back(std::move(uni));
                note += "no intersection or union member";
            }
            if (!has_diff) {
                missing.push_back(std::move(ab));
                missing.push_back(std::move(ba));
                if (!note.empty()) note += "; ";
                note += "no difference member";
            }
            report.witnesses.push_back(
                Witness{{i, j}, {a, b}, std::move(missing), std::move(note)});
        }
    }
    return report;
}

ViolationReport is_uncrossable(const Family& f) {
    ViolationReport report{"uncrossable", true, {}};
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const ESet& a = f[i].set;
            const ESet& b = f[j].set;
            ESet inter = a & b;
            ESet uni = a | b;
            ESet ab = a - b;
            ESet ba = b - a;
            bool lattice_pair =
                counts_as_member(f, inter) && counts_as_member(f, uni);
            bool diff_pair = counts_as_member(f, ab) && counts_as_member(f, ba);
            if (lattice_pair || diff_pair) continue;
            report.ok = false;
            std::vector<ESet> missing;
            for (ESet* d : {&inter, &uni, &ab, &ba}) {
                if (!counts_as_member(f, *d)) missing.push_back(std::move(*d));
            }
            report.witnesses.push_back(
                Witness{{i, j},
                        {a, b},
                        std::move(missing),
                        "neither the intersection/union pair nor the "
                        "difference pair is contained"});
        }
    }
    return report;
}

ViolationReport satisfies_gamma(const Family& f) {
    ViolationReport report{"gamma", true, {}};
    // inclusion-wise minimal members
    std::vector<std::size_t> minimal;
    for (std::size_t c = 0; c < f.size(); ++c) {
        bool is_minimal = true;
        for (std::size_t o = 0; o < f.size() && is_minimal; ++o) {
            if (o != c && f[o].set.proper_subset_of(f[c].set)) is_minimal = false;
        }
        if (is_minimal) minimal.push_back(c);
    }
    for (std::size_t c : minimal) {
        const ESet& cs = f[c].set;
        for (std::size_t i1 = 0; i1 < f.size(); ++i1) {
            if (i1 == c) continue;
            const ESet& s1 = f[i1].set;
            if (!crosses(cs, s1)) continue;
            for (std::size_t i2 = 0; i2 < f.size(); ++i2) {
                if (i2 == c || i2 == i1) continue;
                const ESet& s2 = f[i2].set;
                if (!s1.proper_subset_of(s2)) continue;
                if (!crosses(cs, s2)) continue;
                ESet rest = s2 - (s1 | cs);
                if (rest.none() || counts_as_member(f, rest)) continue;
                report.ok = false;
                report.witnesses.push_back(Witness{
                    {c, i1, i2},
                    {cs, s1, s2},
                    {std::move(rest)},
                    "S2 - (S1 | C) is neither empty nor a member"});
            }
        }
    }
    return report;
}

namespace {

// Generation-0 member index per coordinate, in coordinate order.  Throws
// unless generation 0 is exactly {V_1..V_k}.
std::vector<std::size_t> coordinate_members(const Family& f) {
    const GroundSet& g = f.ground();
    std::vector<std::size_t> out;
    std::size_t gen0 = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].generation == 0) ++gen0;
    }
    if (gen0 != static_cast<std::size_t>(g.k())) {
        throw FamilyError("generation 0 holds " + std::to_string(gen0) +
                          " members, expected the " + std::to_string(g.k()) +
                          " coordinate sets");
    }
    for (int i = 1; i <= g.k(); ++i) {
        auto idx = f.find(coordinate_set(g, i));
        if (!idx || f[*idx].generation != 0) {
            throw FamilyError(
                "generation 0 is missing the coordinate set V_" +
                std::to_string(i));
        }
        out.push_back(*idx);
    }
    return out;
}

}  // namespace

ViolationReport validate_construction(const Family& f) {
    ViolationReport report{"lemmas", true, {}};
    if (f.empty()) return report;

    const GroundSet& g = f.ground();
    const int k = g.k();
    coordinate_members(f);  // precondition: generation 0 = {V_1..V_k}

    std::vector<ESet> coord;
    coord.reserve(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) coord.push_back(coordinate_set(g, i));

    auto fail = [&](std::size_t m, std::vector<ESet> missing, std::string note) {
        report.ok = false;
        report.witnesses.push_back(Witness{
            {m}, {f[m].set}, std::move(missing), std::move(note)});
    };

    for (std::size_t m = 0; m < f.size(); ++m) {
        const ESet& s = f[m].set;

        // (1) containment in some coordinate set
        bool inside = false;
        for (const ESet& v : coord) {
            if (s.subset_of(v)) {
                inside = true;
                break;
            }
        }
        if (!inside) fail(m, {}, "member lies inside no coordinate set");

        // (2) at most one unit vector, matching containment
        std::vector<int> units = unit_indices_in(g, s);
        if (units.size() > 1) {
            fail(m, {}, "member holds " + std::to_string(units.size()) +
                            " unit vectors");
        } else if (units.size() == 1) {
            int i = units.front();
            if (!s.subset_of(coord[static_cast<std::size_t>(i - 1)])) {
                fail(m, {}, "member holds v_{" + std::to_string(i) +
                                "} but leaves V_" + std::to_string(i));
            }
            // (3) upward closure over the coordinates above i
            Element base = g.unit_vector(i);
            int above = k - i;
            bool closed = true;
            for (Element pattern = 0; pattern < (Element{1} << above); ++pattern) {
                Element v = base;
                for (int b = 0; b < above; ++b) {
                    if (pattern & (Element{1} << b)) v |= g.unit_vector(i + 1 + b);
                }
                if (!s.test(v)) {
                    fail(m, {ESet::singleton(g, v)},
                         "member holds v_{" + std::to_string(i) +
                             "} but misses element " + std::to_string(v));
                    closed = false;
                    break;
                }
            }
            if (closed && s.count() < (std::size_t{1} << (k - i))) {
                fail(m, {}, "member holds v_{" + std::to_string(i) +
                                "} yet has fewer than 2^(k-i) elements");
            }
        }
    }

    // (4) no unit-vector singleton below coordinate k
    for (int i = 1; i < k; ++i) {
        ESet s = ESet::singleton(g, g.unit_vector(i));
        if (f.contains(s)) {
            fail(*f.find(s), {}, "{v_{" + std::to_string(i) +
                                     "}} must stay outside the family");
        }
    }

    // (5) no V_i - V_j for i < j
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            ESet s = coord[static_cast<std::size_t>(i - 1)] -
                     coord[static_cast<std::size_t>(j - 1)];
            if (f.contains(s)) {
                fail(*f.find(s), {},
                     "V_" + std::to_string(i) + " - V_" + std::to_string(j) +
                         " must stay outside the family");
            }
        }
    }

    // (6) no member matches the excluded cut pattern for any i in {3..k}
    Element top = g.vec_of_indexset([&] {
        std::vector<int> all(static_cast<std::size_t>(k));
        std::iota(all.begin(), all.end(), 1);
        return all;
    }());
    for (std::size_t m = 0; m < f.size(); ++m) {
        const ESet& s = f[m].set;
        for (int i = 3; i <= k; ++i) {
            Element vi = g.unit_vector(i);
            Element v1i = g.vec_of_indexset({1, i});
            if (s.test(vi) && s.test(top) && !s.test(v1i)) {
                fail(m, {ESet::singleton(g, v1i)},
                     "member holds v_{" + std::to_string(i) +
                         "} and the all-ones vector but misses v_{1," +
                         std::to_string(i) + "}");
            }
        }
    }

    return report;
}

std::vector<ConflictWitnessEntry> conflict_witness(const Family& f) {
    std::vector<std::size_t> coord = coordinate_members(f);
    std::vector<ConflictWitnessEntry> out;
    for (std::size_t i = 0; i < coord.size(); ++i) {
        for (std::size_t j = i + 1; j < coord.size(); ++j) {
            const ESet& vi = f[coord[i]].set;
            const ESet& vj = f[coord[j]].set;
            ESet uni = vi | vj;
            ESet diff = vi - vj;
            out.push_back(ConflictWitnessEntry{
                coord[i], coord[j], uni, diff,
                !counts_as_member(f, uni), !counts_as_member(f, diff)});
        }
    }
    return out;
}

namespace {

// Incremental state for the partition backtracking.  For a same-block pair
// the uncrossable condition can be met by the intersection/union clause or
// the difference clause; a clause stays alive while both of its required
// sets are members whose blocks are this one or still undecided.
struct PartitionSearch {
    const Family& f;
    int d;
    long budget;
    long nodes = 0;
    std::vector<int> assignment;           // member -> block, -1 undecided
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> order;        // members, most-constrained first

    struct PairNeeds {
        // member indices of the required sets, or npos when the required
        // set is not a member at all (clause dead from the start)
        std::size_t inter = npos, uni = npos, ab = npos, ba = npos;
        bool clause1_possible = false;
        bool clause2_possible = false;
    };
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<PairNeeds> needs;  // indexed i * size + j

    explicit PartitionSearch(const Family& fam, int depth, long node_budget)
        : f(fam), d(depth), budget(node_budget),
          assignment(fam.size(), -1), needs(fam.size() * fam.size()) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (std::size_t j = i + 1; j < f.size(); ++j) {
                needs[i * f.size() + j] = analyze(i, j);
            }
        }
        // order by conflict degree, then index; pairs with both clauses
        // dead force distinct blocks, so high-degree members go first
        std::vector<std::size_t> degree(f.size(), 0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (std::size_t j = i + 1; j < f.size(); ++j) {
                const PairNeeds& pn = needs[i * f.size() + j];
                if (!pn.clause1_possible && !pn.clause2_possible) {
                    ++degree[i];
                    ++degree[j];
                }
            }
        }
        order.resize(f.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return degree[a] > degree[b];
                         });
    }

    PairNeeds analyze(std::size_t i, std::size_t j) const {
        const ESet& a = f[i].set;
        const ESet& b = f[j].set;
        PairNeeds pn;
        auto locate = [&](const ESet& s) {
            if (s.none() || s.all()) return npos;
            auto idx = f.find(s);
            return idx ? *idx : npos;
        };
        pn.inter = locate(a & b);
        pn.uni = locate(a | b);
        pn.ab = locate(a - b);
        pn.ba = locate(b - a);
        pn.clause1_possible = pn.inter != npos && pn.uni != npos;
        pn.clause2_possible = pn.ab != npos && pn.ba != npos;
        return pn;
    }

    bool clause_alive(std::size_t x, std::size_t y, int block) const {
        return x != npos && y != npos &&
               (assignment[x] == -1 || assignment[x] == block) &&
               (assignment[y] == -1 || assignment[y] == block);
    }

    // May members i and j still share `block` under the current partial
    // assignment?
    bool pair_open(std::size_t i, std::size_t j, int block) const {
        const PairNeeds& pn = needs[std::min(i, j) * f.size() + std::max(i, j)];
        return (pn.clause1_possible && clause_alive(pn.inter, pn.uni, block)) ||
               (pn.clause2_possible && clause_alive(pn.ab, pn.ba, block));
    }

    bool block_satisfied(std::size_t i, std::size_t j, int block) const {
        const PairNeeds& pn = needs[std::min(i, j) * f.size() + std::max(i, j)];
        auto in_block = [&](std::size_t x) {
            return x != npos && assignment[x] == block;
        };
        return (in_block(pn.inter) && in_block(pn.uni)) ||
               (in_block(pn.ab) && in_block(pn.ba));
    }

    bool solve(std::size_t pos) {
        if (++nodes > budget) {
            throw BudgetError("partition_uncrossable: node budget of " +
                              std::to_string(budget) + " exhausted");
        }
        if (pos == order.size()) return verify_complete();
        std::size_t m = order[pos];
        int used = static_cast<int>(blocks.size());
        int limit = std::min(d, used + 1);
        for (int b = 0; b < limit; ++b) {
            bool ok = true;
            if (b < used) {
                for (std::size_t other : blocks[static_cast<std::size_t>(b)]) {
                    if (!pair_open(m, other, b)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            assignment[m] = b;
            if (b == used) blocks.emplace_back();
            blocks[static_cast<std::size_t>(b)].push_back(m);
            if (solve(pos + 1)) return true;
            blocks[static_cast<std::size_t>(b)].pop_back();
            if (b == used) blocks.pop_back();
            assignment[m] = -1;
        }
        return false;
    }

    // A clause may have stayed "open" on the promise of undecided members;
    // the complete assignment has to make good on one clause per pair.
    bool verify_complete() const {
        for (const auto& block : blocks) {
            for (std::size_t x = 0; x < block.size(); ++x) {
                for (std::size_t y = x + 1; y < block.size(); ++y) {
                    if (!block_satisfied(block[x], block[y],
                                         assignment[block[x]])) {
                        return false;
                    }
                }
            }
        }
        return true;
    }
};

}  // namespace

std::optional<std::vector<std::vector<std::size_t>>> partition_uncrossable(
    const Family& f, int d, long node_budget) {
    if (d < 1) throw Error("partition_uncrossable: d must be at least 1");
    if (f.empty()) return std::vector<std::vector<std::size_t>>{};
    PartitionSearch search(f, d, node_budget);
    if (!search.solve(0)) return std::nullopt;
    std::vector<std::vector<std::size_t>> blocks = search.blocks;
    for (auto& block : blocks) std::sort(block.begin(), block.end());
    return blocks;
}

}  // namespace pliable
