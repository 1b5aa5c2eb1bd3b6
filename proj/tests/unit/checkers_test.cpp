#include <doctest.h>

#include <vector>

#include "pliable/checkers.hpp"
#include "pliable/construct.hpp"
#include "pliable/errors.hpp"
#include "pliable/family.hpp"

using namespace pliable;

namespace {

Family family_of(const GroundSet& g,
                 const std::vector<std::vector<Element>>& sets) {
    Family f(g);
    for (const auto& s : sets) f.insert(ESet::of(g, s), 0);
    return f;
}

}  // namespace

TEST_CASE("derived sets equal to {} or V never count as members") {
    GroundSet g(3);
    Family f = family_of(g, {{}, {0, 1, 2, 3, 4, 5, 6, 7}, {1, 3}});
    CHECK_FALSE(counts_as_member(f, ESet::empty(g)));
    CHECK_FALSE(counts_as_member(f, ESet::full(g)));
    CHECK(counts_as_member(f, ESet::of(g, {1, 3})));
    CHECK_FALSE(counts_as_member(f, ESet::of(g, {3, 7})));
}

TEST_CASE("constructed families are pliable and structurally submodular") {
    for (int k : {3, 4}) {
        CAPTURE(k);
        Family f = construct_family(k);
        CHECK(is_pliable(f).ok);
        CHECK(is_structurally_submodular(f).ok);
        CHECK(validate_construction(f).ok);
    }
}

TEST_CASE("two coordinate sets alone are not pliable") {
    GroundSet g(3);
    Family f(g);
    f.insert(coordinate_set(g, 1), 0);
    f.insert(coordinate_set(g, 2), 0);
    ViolationReport r = is_pliable(f);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].members == std::vector<std::size_t>{0, 1});
    CHECK_FALSE(is_structurally_submodular(f).ok);
}

TEST_CASE("subsets of one coordinate set are uncrossable") {
    GroundSet g(3);
    // every nonempty subset of V_1; unions and intersections stay inside
    std::vector<Element> v1 = {1, 3, 5, 7};
    Family f(g);
    for (unsigned m = 1; m < 16; ++m) {
        ESet s = ESet::empty(g);
        for (unsigned b = 0; b < 4; ++b) {
            if (m & (1u << b)) s.set(v1[b]);
        }
        f.insert(s, 0);
    }
    CHECK(is_uncrossable(f).ok);
    CHECK(is_pliable(f).ok);

    std::optional<std::vector<std::vector<std::size_t>>> blocks =
        partition_uncrossable(f, 1);
    REQUIRE(blocks.has_value());
    CHECK(blocks->size() == 1);
    CHECK((*blocks)[0].size() == f.size());
}

TEST_CASE("constructed family is not uncrossable, first witness (V_1, V_2)") {
    GroundSet g(3);
    Family f = construct_family(3);
    ViolationReport r = is_uncrossable(f);
    REQUIRE_FALSE(r.ok);
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK(r.witnesses[0].sets[0] == coordinate_set(g, 1));
    CHECK(r.witnesses[0].sets[1] == coordinate_set(g, 2));
}

TEST_CASE("gamma holds or fails on hand-built families") {
    GroundSet g(3);
    // C={3,7} is minimal, crosses {1,3} and {1,3,5}, and leaves {5}
    Family violating = family_of(g, {{1, 3}, {1, 3, 5}, {3, 7}});
    ViolationReport bad = satisfies_gamma(violating);
    REQUIRE_FALSE(bad.ok);
    REQUIRE(bad.witnesses.size() == 1);
    CHECK(bad.witnesses[0].sets[0] == ESet::of(g, {3, 7}));
    CHECK(bad.witnesses[0].sets[1] == ESet::of(g, {1, 3}));
    CHECK(bad.witnesses[0].sets[2] == ESet::of(g, {1, 3, 5}));
    CHECK(bad.witnesses[0].missing[0] == ESet::of(g, {5}));

    // adding the residue {5} settles the only live triple
    Family settled = family_of(g, {{1, 3}, {1, 3, 5}, {3, 7}, {5}});
    CHECK(satisfies_gamma(settled).ok);

    // {7} sits inside {3,7}, so {3,7} is no longer minimal and its bad
    // residue must not be reported
    Family shielded = family_of(g, {{7}, {3, 7}, {1, 3}, {1, 3, 5}});
    CHECK(satisfies_gamma(shielded).ok);
}

TEST_CASE("empty family passes every property vacuously") {
    GroundSet g(3);
    Family f(g);
    CHECK(is_pliable(f).ok);
    CHECK(is_structurally_submodular(f).ok);
    CHECK(is_uncrossable(f).ok);
    CHECK(satisfies_gamma(f).ok);
    CHECK(validate_construction(f).ok);
    std::optional<std::vector<std::vector<std::size_t>>> blocks =
        partition_uncrossable(f, 1);
    REQUIRE(blocks.has_value());
    CHECK(blocks->empty());
}

TEST_CASE("validate_construction flags a planted violation") {
    GroundSet g(3);
    Family f = construct_family(3);
    Family tampered(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        tampered.insert(f[i].set, f[i].generation);
    }
    // {1,2} is contained in no coordinate set (check 1) and holds the two
    // unit vectors v_{1}, v_{2} (check 2)
    tampered.insert(ESet::of(g, {1, 2}), 2);
    ViolationReport r = validate_construction(tampered);
    CHECK_FALSE(r.ok);
    CHECK(r.witnesses.size() >= 2);
}

TEST_CASE("validate_construction requires the coordinate sets up front") {
    GroundSet g(3);
    Family f(g);
    f.insert(coordinate_set(g, 1), 0);
    f.insert(coordinate_set(g, 2), 0);
    CHECK_THROWS_AS(validate_construction(f), FamilyError);
    CHECK_THROWS_AS(conflict_witness(f), FamilyError);
}

TEST_CASE("conflict witness lists every coordinate pair with both facts") {
    GroundSet g(3);
    Family f = construct_family(3);
    std::vector<ConflictWitnessEntry> entries = conflict_witness(f);
    REQUIRE(entries.size() == 3);
    std::size_t facts = 0;
    std::size_t at = 0;
    for (int i = 1; i <= 3; ++i) {
        for (int j = i + 1; j <= 3; ++j) {
            const ConflictWitnessEntry& e = entries[at++];
            CHECK(f[e.vi].set == coordinate_set(g, i));
            CHECK(f[e.vj].set == coordinate_set(g, j));
            CHECK(e.union_set ==
                  (coordinate_set(g, i) | coordinate_set(g, j)));
            CHECK(e.difference_set ==
                  (coordinate_set(g, i) - coordinate_set(g, j)));
            CHECK(e.union_absent);
            CHECK(e.difference_absent);
            facts += e.union_absent + e.difference_absent;
        }
    }
    CHECK(facts == 6);
}

TEST_CASE("no partition of the k=3 family into two uncrossable blocks") {
    Family f = construct_family(3);
    CHECK_FALSE(partition_uncrossable(f, 2).has_value());
    CHECK_FALSE(partition_uncrossable(f, 1).has_value());
}

TEST_CASE("k=4 family resists three uncrossable blocks") {
    Family f = construct_family(4);
    CHECK_FALSE(partition_uncrossable(f, 2).has_value());
    CHECK_FALSE(partition_uncrossable(f, 3).has_value());
}

TEST_CASE("partition search respects d and the node budget") {
    Family f = construct_family(3);
    CHECK_THROWS_AS(partition_uncrossable(f, 0), Error);
    CHECK_THROWS_AS(partition_uncrossable(f, 2, 1), BudgetError);
}

TEST_CASE("the k=3 family splits into uncrossable blocks at some d >= 3") {
    Family f = construct_family(3);
    int found_at = 0;
    std::vector<std::vector<std::size_t>> blocks;
    for (int d = 3; d <= static_cast<int>(f.size()); ++d) {
        std::optional<std::vector<std::vector<std::size_t>>> result =
            partition_uncrossable(f, d);
        if (result) {
            found_at = d;
            blocks = *result;
            break;
        }
    }
    REQUIRE(found_at >= 3);

    // the blocks really partition the member list
    std::vector<bool> seen(f.size(), false);
    for (const auto& block : blocks) {
        for (std::size_t idx : block) {
            REQUIRE(idx < f.size());
            CHECK_FALSE(seen[idx]);
            seen[idx] = true;
        }
    }
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(seen[i]);

    // and each block is uncrossable as a family of its own
    for (const auto& block : blocks) {
        Family sub(f.ground());
        for (std::size_t idx : block) sub.insert(f[idx].set, 0);
        CHECK(is_uncrossable(sub).ok);
    }
}
