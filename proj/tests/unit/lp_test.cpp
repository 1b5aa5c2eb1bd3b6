#include <doctest.h>

#include <utility>
#include <variant>
#include <vector>

#include "pliable/certificate.hpp"
#include "pliable/construct.hpp"
#include "pliable/errors.hpp"
#include "pliable/lp.hpp"

using namespace pliable;

namespace {

// Brute-force cut function of the 4-cycle 0-1-2-3-0 with unit capacities.
// The oracle for the positive control: its sublevel family at lambda = 3
// must be realizable, with g = cut itself as a witness.
int cycle_cut(unsigned mask) {
    constexpr std::pair<unsigned, unsigned> edges[4] = {
        {0, 1}, {1, 2}, {2, 3}, {3, 0}};
    int cut = 0;
    for (auto [u, v] : edges) {
        cut += ((mask >> u) & 1u) != ((mask >> v) & 1u);
    }
    return cut;
}

ESet eset_of_mask(const GroundSet& g, unsigned mask) {
    ESet s = ESet::empty(g);
    for (Element e = 0; e < g.n(); ++e) {
        if (mask & (1u << e)) s.set(e);
    }
    return s;
}

// { S : {} != S != V, cut(S) < 3 } over the four cycle vertices.
Family cycle_family(const GroundSet& g) {
    Family f(g);
    for (unsigned mask = 1; mask < 15; ++mask) {
        if (cycle_cut(mask) < 3) f.insert(eset_of_mask(g, mask), 0);
    }
    return f;
}

}  // namespace

TEST_CASE("variables are shared per complement class") {
    GroundSet g(2);
    LPProblem p(g, RealizeMode::Complemented);
    ESet v1 = coordinate_set(g, 1);
    std::size_t var = p.var_of(v1);
    CHECK(var != kLambdaVar);
    CHECK(p.var_of(v1.complement()) == var);
    CHECK(p.class_rep(var) == v1.complement());  // {0,2} sorts below {1,3}
    CHECK(p.find_var(v1) == var);
    CHECK_FALSE(p.find_var(ESet::of(g, {3})).has_value());
    CHECK(p.class_count() == 1);
    CHECK(p.variable_count() == 2);
    CHECK_THROWS_AS(p.class_rep(kLambdaVar), Error);
}

TEST_CASE("threshold rows pin the gap-normalized inequalities") {
    GroundSet g(2);
    LPProblem p(g, RealizeMode::Complemented);
    ESet v1 = coordinate_set(g, 1);
    std::size_t m = p.add_membership_row(v1);
    std::size_t nm = p.add_nonmembership_row(ESet::of(g, {1}));

    const LPRow& mr = p.rows()[m];
    REQUIRE(mr.coeffs.size() == 2);
    CHECK(mr.coeffs[0].first == kLambdaVar);
    CHECK(mr.coeffs[0].second == 1);
    CHECK(mr.coeffs[1].second == -1);
    CHECK(mr.rhs == 1);

    const LPRow& nr = p.rows()[nm];
    REQUIRE(nr.coeffs.size() == 2);
    CHECK(nr.coeffs[0].first == kLambdaVar);
    CHECK(nr.coeffs[0].second == -1);
    CHECK(nr.coeffs[1].second == 1);
    CHECK(nr.rhs == 0);

    CHECK(p.find_membership_row(v1) == m);
    CHECK(p.find_membership_row(v1.complement()) == m);
    CHECK(p.find_nonmembership_row(ESet::of(g, {1})) == nm);
    CHECK_FALSE(p.find_nonmembership_row(v1).has_value());
}

TEST_CASE("difference rows are intersection rows on the complement") {
    GroundSet g(3);
    LPProblem p(g, RealizeMode::Complemented);
    ESet v1 = coordinate_set(g, 1);
    ESet v2 = coordinate_set(g, 2);
    std::size_t r = p.add_difference_row(v1, v2);
    CHECK(p.find_submodularity_row(v1, v2.complement()) == r);

    // the four class coefficients: +V_1 +V_2 -(V_1-V_2) -(V_2-V_1)
    const LPRow& row = p.rows()[r];
    auto coeff_of = [&](const ESet& s) {
        std::size_t var = p.var_of(s);
        for (const auto& [v, c] : row.coeffs) {
            if (v == var) return c;
        }
        return Rational(0);
    };
    CHECK(coeff_of(v1) == 1);
    CHECK(coeff_of(v2) == 1);
    CHECK(coeff_of(v1 - v2) == -1);
    CHECK(coeff_of(v2 - v1) == -1);
    CHECK(row.rhs == 0);
}

TEST_CASE("coefficients merge when both operands share a class") {
    GroundSet g(2);
    LPProblem p(g, RealizeMode::Complemented);
    ESet a = ESet::of(g, {0, 1});
    // b = V - a, so the pair contributes 2 g(a) - 2 g(empty class) >= 0
    std::size_t r = p.add_submodularity_row(a, a.complement());
    const LPRow& row = p.rows()[r];
    REQUIRE(row.coeffs.size() == 2);
    auto coeff_of = [&](const ESet& s) {
        std::size_t var = p.var_of(s);
        for (const auto& [v, c] : row.coeffs) {
            if (v == var) return c;
        }
        return Rational(0);
    };
    CHECK(coeff_of(a) == 2);
    CHECK(coeff_of(ESet::empty(g)) == -2);
    CHECK(row.rhs == 0);
}

TEST_CASE("full problem size at k=2") {
    GroundSet g(2);
    Family f = cycle_family(g);
    auto built = build_realizability_lp(f, RealizeMode::Literal);
    REQUIRE(std::holds_alternative<LPProblem>(built));
    const LPProblem& p = std::get<LPProblem>(built);
    // 8 complement classes plus lambda; 7 threshold rows (none for the
    // class of {} and V); 120 subset pairs minus 65 comparable ones
    CHECK(p.variable_count() == 9);
    std::size_t thresholds = 0;
    std::size_t submod = 0;
    for (const LPRow& row : p.rows()) {
        (row.kind == LPRow::Kind::Submodularity ? submod : thresholds)++;
    }
    CHECK(thresholds == 7);
    CHECK(submod == 55);
}

TEST_CASE("literal mode rejects families that are not complement-closed") {
    Family f = construct_family(3);
    auto built = build_realizability_lp(f, RealizeMode::Literal);
    REQUIRE(std::holds_alternative<TrivialRejection>(built));
    const TrivialRejection& rej = std::get<TrivialRejection>(built);
    CHECK(rej.witness == coordinate_set(f.ground(), 1));
    CHECK_FALSE(rej.reason.empty());
}

TEST_CASE("build refuses dimensions and row counts over the limits") {
    Family f4 = construct_family(4);
    CHECK_THROWS_AS(build_realizability_lp(f4, RealizeMode::Complemented),
                    Error);
    LpLimits tight;
    tight.max_rows = 10;
    Family f3 = construct_family(3);
    CHECK_THROWS_AS(
        build_realizability_lp(f3, RealizeMode::Complemented, tight), Error);
}

TEST_CASE("the 4-cycle sublevel family is realizable, cut is a witness") {
    GroundSet g(2);
    Family f = cycle_family(g);
    CHECK(f.size() == 12);

    for (RealizeMode mode :
         {RealizeMode::Literal, RealizeMode::Complemented}) {
        CAPTURE(to_string(mode));
        auto built = build_realizability_lp(f, mode);
        REQUIRE(std::holds_alternative<LPProblem>(built));
        LPProblem& p = std::get<LPProblem>(built);

        LPOutcome outcome = solve_feasibility(p);
        REQUIRE(std::holds_alternative<LpFeasible>(outcome));
        const LpFeasible& feas = std::get<LpFeasible>(outcome);
        CHECK(satisfies_all_rows(p, feas.values));

        // the oracle's own witness: g = cut, lambda = 3, and every
        // positive scaling plus shift of it
        for (auto [alpha, beta] :
             {std::pair<int, int>{1, 0}, {2, -3}, {5, 7}}) {
            std::vector<Rational> x(p.variable_count(), Rational(0));
            x[kLambdaVar] = 3 * alpha + beta;
            for (std::size_t v = 1; v < p.variable_count(); ++v) {
                unsigned mask = 0;
                for (Element e : p.class_rep(v).elements()) mask |= 1u << e;
                x[v] = alpha * cycle_cut(mask) + beta;
            }
            CHECK(satisfies_all_rows(p, x));
        }
    }
}

TEST_CASE("two coordinate sets at k=2 cannot be a sublevel family") {
    GroundSet g(2);
    Family f(g);
    f.insert(coordinate_set(g, 1), 0);
    f.insert(coordinate_set(g, 2), 0);

    auto built = build_realizability_lp(f, RealizeMode::Complemented);
    REQUIRE(std::holds_alternative<LPProblem>(built));
    LPProblem& p = std::get<LPProblem>(built);
    LPOutcome outcome = solve_feasibility(p);
    REQUIRE(std::holds_alternative<LpInfeasible>(outcome));
    const LpInfeasible& infeas = std::get<LpInfeasible>(outcome);
    CHECK(verify_farkas(p, infeas.certificate));

    // in literal mode the missing complements reject it outright
    auto literal = build_realizability_lp(f, RealizeMode::Literal);
    CHECK(std::holds_alternative<TrivialRejection>(literal));
}

TEST_CASE("the transcribed hand certificate refutes the k=3 family") {
    GroundSet g(3);
    Family f = construct_family(3);
    auto built = build_realizability_lp(f, RealizeMode::Complemented);
    REQUIRE(std::holds_alternative<LPProblem>(built));
    LPProblem& p = std::get<LPProblem>(built);

    ESet v1 = coordinate_set(g, 1);
    ESet v2 = coordinate_set(g, 2);
    ESet v3 = coordinate_set(g, 3);
    ESet u3 = ESet::of(g, {4, 6, 7});

    FarkasCertificate cert;
    cert.multipliers.assign(p.rows().size(), Rational(0));
    auto raise = [&](std::optional<std::size_t> row) {
        REQUIRE(row.has_value());
        cert.multipliers[*row] = 1;
    };
    // the three difference-form submodular inequalities
    raise(p.find_submodularity_row(v1, v2.complement()));
    raise(p.find_submodularity_row(v1 - v2, v3.complement()));
    raise(p.find_submodularity_row(v2 - v1, u3.complement()));
    // memberships of the coordinate sets
    raise(p.find_membership_row(v1));
    raise(p.find_membership_row(v2));
    raise(p.find_membership_row(v3));
    // non-memberships of the two unit vectors and W_3
    raise(p.find_nonmembership_row(ESet::of(g, {1})));
    raise(p.find_nonmembership_row(ESet::of(g, {2})));
    raise(p.find_nonmembership_row(ESet::of(g, {4, 7})));

    CHECK(verify_farkas(p, cert));

    // perturbing any single multiplier breaks the cancellation
    FarkasCertificate broken = cert;
    broken.multipliers[*p.find_membership_row(v1)] = 2;
    CHECK_FALSE(verify_farkas(p, broken));
}

TEST_CASE("certificate pairs transcribe to refuting rows for any k") {
    // no family and no full enumeration needed: the 2k-3 difference rows
    // plus the threshold rows already combine to 0 >= k
    for (int k : {3, 4, 5, 6}) {
        CAPTURE(k);
        GroundSet g(k);
        Certificate c = build_certificate(k);
        LPProblem p(g, RealizeMode::Complemented);
        for (const auto& [a, b] : c.all_pairs()) p.add_difference_row(a, b);
        for (int i = 1; i <= k; ++i) p.add_membership_row(coordinate_set(g, i));
        p.add_nonmembership_row(ESet::singleton(g, g.unit_vector(1)));
        p.add_nonmembership_row(ESet::singleton(g, g.unit_vector(2)));
        for (const ESet& w : c.w_sets) p.add_nonmembership_row(w);
        CHECK(p.rows().size() == 4 * static_cast<std::size_t>(k) - 3);

        FarkasCertificate cert;
        cert.multipliers.assign(p.rows().size(), Rational(1));
        CHECK(verify_farkas(p, cert));
    }
}

TEST_CASE("solver handles degenerate systems") {
    GroundSet g(2);
    LPProblem empty(g, RealizeMode::Complemented);
    LPOutcome outcome = solve_feasibility(empty);
    REQUIRE(std::holds_alternative<LpFeasible>(outcome));
    CHECK(std::get<LpFeasible>(outcome).values ==
          std::vector<Rational>{Rational(0)});

    // a single satisfied-at-origin row needs no pivots
    LPProblem easy(g, RealizeMode::Complemented);
    easy.add_nonmembership_row(ESet::of(g, {1}));
    outcome = solve_feasibility(easy);
    REQUIRE(std::holds_alternative<LpFeasible>(outcome));

    // a single violated-at-origin row needs phase one
    LPProblem one(g, RealizeMode::Complemented);
    one.add_membership_row(coordinate_set(g, 1));
    outcome = solve_feasibility(one);
    REQUIRE(std::holds_alternative<LpFeasible>(outcome));
    CHECK(satisfies_all_rows(one, std::get<LpFeasible>(outcome).values));
}

TEST_CASE("pivot budget exhaustion is reported, not hidden") {
    Family f = construct_family(3);
    auto built = build_realizability_lp(f, RealizeMode::Complemented);
    LPProblem& p = std::get<LPProblem>(built);
    LpLimits strangled;
    strangled.pivot_budget = 1;
    LPOutcome outcome = solve_feasibility(p, strangled);
    REQUIRE(std::holds_alternative<LpBudgetExhausted>(outcome));
    CHECK(std::get<LpBudgetExhausted>(outcome).pivots >= 1);
    CHECK_FALSE(std::get<LpBudgetExhausted>(outcome).detail.empty());
}
