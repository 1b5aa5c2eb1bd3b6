#include "pliable/construct.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>

namespace pliable {

std::string to_string(TieBreak t) {
    return t == TieBreak::MinBitmask ? "min" : "max";
}

namespace {

struct Staged {
    ESet set;
    Provenance provenance;
};

// The unique coordinate i with v_{i} in s, if any.  Every set handled here
// lies inside some V_j and therefore holds at most one unit vector; a
// second one would mean the construction lost that invariant.
std::optional<int> sole_unit(const GroundSet& g, const ESet& s) {
    std::vector<int> units = unit_indices_in(g, s);
    if (units.size() > 1) {
        throw std::logic_error(
            "construct_family: staged candidate with two unit vectors " +
            s.to_string());
    }
    if (units.empty()) return std::nullopt;
    return units.front();
}

struct StagedMask {
    std::uint64_t set;
    Provenance provenance;
};

// Open-addressing hash set of nonzero masks (0 marks an empty slot; the
// empty set is never staged or stored).  The generation scan performs a few
// membership probes per crossing pair over families reaching the millions,
// where node-based sets lose to pointer chasing.
class MaskTable {
public:
    explicit MaskTable(std::size_t expected = 16) {
        std::size_t p = 16;
        while (p < expected * 2) p <<= 1;
        slots_.assign(p, 0);
    }

    bool contains(std::uint64_t x) const {
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t i = mix(x) & mask;; i = (i + 1) & mask) {
            if (slots_[i] == x) return true;
            if (slots_[i] == 0) return false;
        }
    }

    // true when x was not present yet
    bool insert(std::uint64_t x) {
        if ((size_ + 1) * 2 > slots_.size()) grow();
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t i = mix(x) & mask;; i = (i + 1) & mask) {
            if (slots_[i] == x) return false;
            if (slots_[i] == 0) {
                slots_[i] = x;
                ++size_;
                return true;
            }
        }
    }

private:
    // full-width mixing: masks often differ only in their high bits, so a
    // plain multiplicative hash routed through low product bits degenerates
    static std::size_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return static_cast<std::size_t>(x);
    }

    void grow() {
        std::vector<std::uint64_t> old = std::move(slots_);
        slots_.assign(old.size() * 2, 0);
        size_ = 0;
        for (std::uint64_t x : old) {
            if (x) insert(x);
        }
    }

    std::vector<std::uint64_t> slots_;
    std::size_t size_ = 0;
};

// Single-word mirror of the general scan for ground sets with at most 64
// elements.  Pair scans are quadratic in the family size, which reaches the
// tens of thousands by k = 6, so the plain path cannot afford an ESet
// allocation per derived set.  Must stage exactly what the general scan
// stages, provenance included; the equivalence is pinned by tests running
// both paths.  Only pairs with max index >= scan_from are visited: older
// pairs were scanned by an earlier iteration, and a scanned pair never
// stages again (its absent intersection became a member then, and a staged
// difference satisfies the both-absent guard from then on).
void scan_generation_words(const GroundSet& g, const Family& f,
                           TieBreak tie_break, std::size_t scan_from,
                           int generation, long member_budget,
                           std::vector<StagedMask>& staged_out) {
    const int k = g.k();
    const std::uint64_t full = g.n() == 64
                                   ? ~std::uint64_t{0}
                                   : (std::uint64_t{1} << g.n()) - 1;
    std::uint64_t units[27] = {};
    for (int i = 1; i <= k; ++i) {
        units[i] = std::uint64_t{1} << g.unit_vector(i);
    }
    auto sole_unit_of = [&](std::uint64_t s) {
        int found = 0;
        for (int i = 1; i <= k; ++i) {
            if (s & units[i]) {
                if (found) {
                    throw std::logic_error(
                        "construct_family: staged candidate with two unit "
                        "vectors");
                }
                found = i;
            }
        }
        return found;  // 0 when none
    };

    std::vector<std::uint64_t> masks(f.size());
    MaskTable members(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::uint64_t m = 0;
        for (Element e = 0; e < g.n(); ++e) {
            if (f[i].set.test(e)) m |= std::uint64_t{1} << e;
        }
        masks[i] = m;
        members.insert(m);
    }

    MaskTable staged_seen;
    auto stage = [&](std::uint64_t s, Provenance p) {
        // first producing pair in scan order wins the provenance
        if (!staged_seen.insert(s)) return;
        if (member_budget > 0 &&
            static_cast<long>(f.size() + staged_out.size()) >= member_budget) {
            throw BudgetError(
                "construct_family: member budget " +
                std::to_string(member_budget) + " exceeded at generation " +
                std::to_string(generation) + " (" + std::to_string(f.size()) +
                " members, " + std::to_string(staged_out.size()) + " staged)");
        }
        staged_out.push_back({s, p});
    };

    for (std::size_t i = 0; i < masks.size(); ++i) {
        const std::uint64_t a = masks[i];
        for (std::size_t j = std::max(i + 1, scan_from); j < masks.size();
             ++j) {
            const std::uint64_t b = masks[j];
            const std::uint64_t inter = a & b;
            if (!inter || (a | b) == full || a == inter || b == inter) {
                continue;  // not crossing
            }
            if (!members.contains(inter)) {
                stage(inter, Provenance::intersection(i, j));
            }

            const std::uint64_t ab = a & ~b;
            const std::uint64_t ba = b & ~a;
            if (members.contains(ab) || members.contains(ba)) continue;
            const int ua = sole_unit_of(ab);
            const int ub = sole_unit_of(ba);
            if (ua && ub) {
                if (ua > ub) {
                    stage(ab, Provenance::difference(i, j, ProvenanceRule::BI));
                } else {
                    stage(ba, Provenance::difference(j, i, ProvenanceRule::BI));
                }
            } else if (ua || ub) {
                if (ub) {  // ba has the unit vector, so ab goes in
                    stage(ab,
                          Provenance::difference(i, j, ProvenanceRule::BII));
                } else {
                    stage(ba,
                          Provenance::difference(j, i, ProvenanceRule::BII));
                }
            } else {
                const bool take_ab =
                    (tie_break == TieBreak::MinBitmask) ? ab < ba : ba < ab;
                if (take_ab) {
                    stage(ab,
                          Provenance::difference(i, j, ProvenanceRule::BIII));
                } else {
                    stage(ba,
                          Provenance::difference(j, i, ProvenanceRule::BIII));
                }
            }
        }
    }
}

}  // namespace

Family construct_family(int k, TieBreak tie_break, int max_k,
                        const PairOrderHook& reorder, long member_budget) {
    if (k < 3 || k > max_k) {
        throw Error("construct_family: k must be in [3, " +
                    std::to_string(max_k) + "], got " + std::to_string(k));
    }
    GroundSet g(k);
    Family f(g);
    for (int i = 1; i <= k; ++i) {
        f.insert(coordinate_set(g, i), 0, Provenance::initial());
    }

    std::size_t scanned_up_to = 0;
    for (int generation = 1;; ++generation) {
        // Membership below is tested against the snapshot taken here; the
        // family is append-only, so f itself is that snapshot during the
        // scan and staged sets are kept to the side until the merge.
        const std::size_t snapshot_size = f.size();
        const std::size_t scan_from = scanned_up_to;
        scanned_up_to = snapshot_size;

        if (!reorder && g.n() <= 64) {
            std::vector<StagedMask> staged_masks;
            scan_generation_words(g, f, tie_break, scan_from, generation,
                                  member_budget, staged_masks);
            if (staged_masks.empty()) break;
            std::sort(staged_masks.begin(), staged_masks.end(),
                      [](const StagedMask& x, const StagedMask& y) {
                          return x.set < y.set;
                      });
            for (const StagedMask& s : staged_masks) {
                ESet e = ESet::empty(g);
                for (Element el = 0; el < g.n(); ++el) {
                    if (s.set & (std::uint64_t{1} << el)) e.set(el);
                }
                f.insert(std::move(e), generation, s.provenance);
            }
            continue;
        }

        std::vector<Staged> staged;
        std::map<ESet, std::size_t> staged_index;
        auto stage = [&](ESet s, Provenance p) {
            // first producing pair in scan order wins the provenance
            if (staged_index.contains(s)) return;
            if (member_budget > 0 &&
                static_cast<long>(f.size() + staged.size()) >= member_budget) {
                throw BudgetError(
                    "construct_family: member budget " +
                    std::to_string(member_budget) +
                    " exceeded at generation " + std::to_string(generation) +
                    " (" + std::to_string(f.size()) + " members, " +
                    std::to_string(staged.size()) + " staged)");
            }
            staged_index.emplace(s, staged.size());
            staged.push_back(Staged{std::move(s), p});
        };

        auto scan_pair = [&](std::size_t i, std::size_t j) {
            const ESet& a = f[i].set;
            const ESet& b = f[j].set;
            if (!crosses(a, b)) return;

            ESet inter = a & b;
            if (!f.contains(inter)) {
                stage(std::move(inter), Provenance::intersection(i, j));
            }

            ESet ab = a - b;
            ESet ba = b - a;
            if (f.contains(ab) || f.contains(ba)) return;
            std::optional<int> ua = sole_unit(g, ab);
            std::optional<int> ub = sole_unit(g, ba);
            if (ua && ub) {
                if (*ua > *ub) {
                    stage(std::move(ab),
                          Provenance::difference(i, j, ProvenanceRule::BI));
                } else {
                    stage(std::move(ba),
                          Provenance::difference(j, i, ProvenanceRule::BI));
                }
            } else if (ua || ub) {
                if (ub) {  // ba has the unit vector, so ab goes in
                    stage(std::move(ab),
                          Provenance::difference(i, j, ProvenanceRule::BII));
                } else {
                    stage(std::move(ba),
                          Provenance::difference(j, i, ProvenanceRule::BII));
                }
            } else {
                bool take_ab = (tie_break == TieBreak::MinBitmask)
                                   ? (ab < ba)
                                   : (ba < ab);
                if (take_ab) {
                    stage(std::move(ab),
                          Provenance::difference(i, j, ProvenanceRule::BIII));
                } else {
                    stage(std::move(ba),
                          Provenance::difference(j, i, ProvenanceRule::BIII));
                }
            }
        };

        if (reorder) {
            // The materialized pair list exists only for the reorder seam;
            // it is quadratic in the snapshot, so the plain path avoids it.
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            pairs.reserve(snapshot_size * (snapshot_size - 1) / 2);
            for (std::size_t i = 0; i < snapshot_size; ++i) {
                for (std::size_t j = i + 1; j < snapshot_size; ++j) {
                    pairs.emplace_back(i, j);
                }
            }
            reorder(pairs);
            for (auto [i, j] : pairs) scan_pair(i, j);
        } else {
            // see scan_generation_words: pairs older than the previous
            // snapshot cannot stage anything new
            for (std::size_t i = 0; i < snapshot_size; ++i) {
                for (std::size_t j = std::max(i + 1, scan_from);
                     j < snapshot_size; ++j) {
                    scan_pair(i, j);
                }
            }
        }

        if (staged.empty()) break;
        std::sort(staged.begin(), staged.end(),
                  [](const Staged& x, const Staged& y) { return x.set < y.set; });
        for (Staged& s : staged) {
            f.insert(std::move(s.set), generation, s.provenance);
        }
    }
    return f;
}

}  // namespace pliable
