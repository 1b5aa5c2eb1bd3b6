#include "pliable/lp.hpp"

#include <algorithm>
#include <cstdint>

namespace pliable {

std::string to_string(RealizeMode m) {
    return m == RealizeMode::Literal ? "literal" : "complemented";
}

namespace {

// Numerically smaller of S and V - S; both sets of a class share one
// variable, so rows always address the representative.
ESet class_representative(const ESet& s) {
    ESet comp = s.complement();
    return comp < s ? comp : s;
}

}  // namespace

LPProblem::LPProblem(GroundSet g, RealizeMode mode)
    : ground_(g), mode_(mode) {}

const ESet& LPProblem::class_rep(std::size_t var) const {
    if (var == kLambdaVar || var > class_reps_.size()) {
        throw Error("LPProblem::class_rep: not a class variable");
    }
    return class_reps_[var - 1];
}

std::size_t LPProblem::var_of(const ESet& s) {
    ESet rep = class_representative(s);
    auto it = var_index_.find(rep);
    if (it != var_index_.end()) return it->second;
    class_reps_.push_back(rep);
    std::size_t var = class_reps_.size();  // lambda occupies index 0
    var_index_.emplace(std::move(rep), var);
    return var;
}

std::optional<std::size_t> LPProblem::find_var(const ESet& s) const {
    auto it = var_index_.find(class_representative(s));
    if (it == var_index_.end()) return std::nullopt;
    return it->second;
}

namespace {

void bump(std::vector<std::pair<std::size_t, Rational>>& acc, std::size_t var,
          int delta) {
    for (auto& [v, c] : acc) {
        if (v == var) {
            c += delta;
            return;
        }
    }
    acc.emplace_back(var, Rational(delta));
}

void finish_coeffs(std::vector<std::pair<std::size_t, Rational>>& acc) {
    std::erase_if(acc, [](const auto& e) { return e.second == 0; });
    std::sort(acc.begin(), acc.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
}

}  // namespace

std::size_t LPProblem::add_submodularity_row(const ESet& a, const ESet& b) {
    LPRow row;
    row.kind = LPRow::Kind::Submodularity;
    row.a = a;
    row.b = b;
    bump(row.coeffs, var_of(a), 1);
    bump(row.coeffs, var_of(b), 1);
    bump(row.coeffs, var_of(a & b), -1);
    bump(row.coeffs, var_of(a | b), -1);
    finish_coeffs(row.coeffs);
    row.rhs = 0;
    rows_.push_back(std::move(row));
    return rows_.size() - 1;
}

std::size_t LPProblem::add_difference_row(const ESet& a, const ESet& b) {
    return add_submodularity_row(a, b.complement());
}

std::size_t LPProblem::add_membership_row(const ESet& s) {
    LPRow row;
    row.kind = LPRow::Kind::Membership;
    row.a = class_representative(s);
    bump(row.coeffs, var_of(s), -1);
    bump(row.coeffs, kLambdaVar, 1);
    finish_coeffs(row.coeffs);
    row.rhs = 1;
    rows_.push_back(std::move(row));
    return rows_.size() - 1;
}

std::size_t LPProblem::add_nonmembership_row(const ESet& s) {
    LPRow row;
    row.kind = LPRow::Kind::NonMembership;
    row.a = class_representative(s);
    bump(row.coeffs, var_of(s), 1);
    bump(row.coeffs, kLambdaVar, -1);
    finish_coeffs(row.coeffs);
    row.rhs = 0;
    rows_.push_back(std::move(row));
    return rows_.size() - 1;
}

std::optional<std::size_t> LPProblem::find_submodularity_row(
    const ESet& a, const ESet& b) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const LPRow& r = rows_[i];
        if (r.kind != LPRow::Kind::Submodularity) continue;
        if ((r.a == a && r.b == b) || (r.a == b && r.b == a)) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> LPProblem::find_membership_row(const ESet& s) const {
    ESet rep = class_representative(s);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].kind == LPRow::Kind::Membership && rows_[i].a == rep)
            return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> LPProblem::find_nonmembership_row(
    const ESet& s) const {
    ESet rep = class_representative(s);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].kind == LPRow::Kind::NonMembership && rows_[i].a == rep)
            return i;
    }
    return std::nullopt;
}

std::variant<LPProblem, TrivialRejection> build_realizability_lp(
    const Family& f, RealizeMode mode, const LpLimits& lim) {
    const GroundSet& g = f.ground();
    if (g.k() > lim.max_k) {
        throw Error("build_realizability_lp: k = " + std::to_string(g.k()) +
                    " exceeds the configured cap " + std::to_string(lim.max_k));
    }
    const std::uint64_t n = g.n();
    if (n > 20) {
        throw Error("build_realizability_lp: 2^k too large to enumerate");
    }
    const std::uint64_t subsets = std::uint64_t{1} << n;

    // unordered distinct pairs minus strictly comparable ones
    std::uint64_t pair_count = subsets * (subsets - 1) / 2;
    std::uint64_t comparable = 1;
    for (std::uint64_t i = 0; i < n; ++i) comparable *= 3;  // 3^n
    comparable -= subsets;
    std::uint64_t row_estimate = pair_count - comparable + subsets / 2;
    if (row_estimate > static_cast<std::uint64_t>(lim.max_rows)) {
        throw Error("build_realizability_lp: " + std::to_string(row_estimate) +
                    " rows exceed the configured cap " +
                    std::to_string(lim.max_rows));
    }

    if (mode == RealizeMode::Literal) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (!f.contains(f[i].set.complement())) {
                return TrivialRejection{
                    f[i].set,
                    "family is not complement-closed: member " +
                        f[i].set.to_string() +
                        " has a non-member complement; no symmetric function "
                        "separates it"};
            }
        }
    }

    LPProblem p(g, mode);

    std::vector<ESet> set_of_mask(subsets, ESet::empty(g));
    for (std::uint64_t m = 0; m < subsets; ++m) {
        ESet s = ESet::empty(g);
        for (std::uint64_t e = 0; e < n; ++e) {
            if (m & (std::uint64_t{1} << e)) s.set(static_cast<Element>(e));
        }
        set_of_mask[m] = std::move(s);
    }

    // class membership in the closed family: S or V-S on file
    auto in_closed = [&](const ESet& rep) {
        return f.contains(rep) || f.contains(rep.complement());
    };

    // threshold rows per class, representative masks ascending; the class
    // of {} and V keeps its variable but no row
    const std::uint64_t full_mask = subsets - 1;
    for (std::uint64_t m = 0; m < subsets; ++m) {
        std::uint64_t comp = full_mask ^ m;
        if (m > comp) continue;  // not the representative
        const ESet& rep = set_of_mask[m];
        p.var_of(rep);
        if (m == 0) continue;
        if (in_closed(rep)) {
            p.add_membership_row(rep);
        } else {
            p.add_nonmembership_row(rep);
        }
    }

    // submodularity rows over unordered incomparable pairs
    for (std::uint64_t a = 0; a < subsets; ++a) {
        for (std::uint64_t b = a + 1; b < subsets; ++b) {
            std::uint64_t inter = a & b;
            if (inter == a || inter == b) continue;  // comparable, tautology
            p.add_submodularity_row(set_of_mask[a], set_of_mask[b]);
        }
    }

    return p;
}

bool satisfies_all_rows(const LPProblem& p, const std::vector<Rational>& x) {
    if (x.size() != p.variable_count()) return false;
    for (const LPRow& row : p.rows()) {
        Rational lhs = 0;
        for (const auto& [var, c] : row.coeffs) lhs += c * x[var];
        if (lhs < row.rhs) return false;
    }
    return true;
}

bool verify_farkas(const LPProblem& p, const FarkasCertificate& c) {
    if (c.multipliers.size() != p.rows().size()) return false;
    std::vector<Rational> combined(p.variable_count(), Rational(0));
    Rational rhs = 0;
    for (std::size_t i = 0; i < p.rows().size(); ++i) {
        const Rational& y = c.multipliers[i];
        if (y < 0) return false;
        if (y == 0) continue;
        for (const auto& [var, coeff] : p.rows()[i].coeffs) {
            combined[var] += y * coeff;
        }
        rhs += y * p.rows()[i].rhs;
    }
    for (const Rational& v : combined) {
        if (v != 0) return false;
    }
    return rhs > 0;
}

namespace {

// One Phase-I run over a working subset of rows.  Dictionary simplex with
// Bland's rule: variable ids order u_0..u_{nv-1}, v_0..v_{nv-1}, then one
// surplus s_i per row, then artificials z on the rows violated at the
// origin.  Free variables are split as x = u - v.
struct PhaseOne {
    std::size_t nv;           // free variables
    std::size_t m;            // rows
    std::size_t sbase;        // first surplus id = 2*nv
    std::size_t zbase;        // first artificial id = 2*nv + m

    std::vector<std::size_t> basic;           // row -> var id
    std::vector<std::size_t> cols;            // column -> var id
    std::vector<std::vector<Rational>> d;     // m x cols.size()
    std::vector<Rational> dconst;             // m
    std::vector<Rational> obj;                // cols.size()
    Rational objconst = 0;
    long pivots = 0;

    PhaseOne(const std::vector<const LPRow*>& rows, std::size_t nvars)
        : nv(nvars), m(rows.size()), sbase(2 * nvars), zbase(2 * nvars + m) {
        std::vector<std::size_t> violated;
        for (std::size_t i = 0; i < m; ++i) {
            if (rows[i]->rhs > 0) violated.push_back(i);
        }
        cols.reserve(2 * nv + violated.size());
        for (std::size_t j = 0; j < 2 * nv; ++j) cols.push_back(j);
        for (std::size_t i : violated) cols.push_back(sbase + i);

        std::vector<std::size_t> col_of(zbase, static_cast<std::size_t>(-1));
        for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = c;

        basic.resize(m);
        d.assign(m, std::vector<Rational>(cols.size(), Rational(0)));
        dconst.assign(m, Rational(0));
        obj.assign(cols.size(), Rational(0));

        for (std::size_t i = 0; i < m; ++i) {
            const LPRow& row = *rows[i];
            bool viol = row.rhs > 0;
            // satisfied: s_i = -rhs + sum a_j u_j - sum a_j v_j
            // violated:  z_i =  rhs - sum a_j u_j + sum a_j v_j + s_i
            int flip = viol ? -1 : 1;
            for (const auto& [var, coeff] : row.coeffs) {
                d[i][col_of[var]] += flip * coeff;
                d[i][col_of[nv + var]] -= flip * coeff;
            }
            if (viol) {
                d[i][col_of[sbase + i]] = 1;
                dconst[i] = row.rhs;
                basic[i] = zbase + i;
            } else {
                dconst[i] = -row.rhs;
                basic[i] = sbase + i;
            }
        }
        // w = sum of the violated rows' dictionary expressions
        for (std::size_t i = 0; i < m; ++i) {
            if (basic[i] < zbase) continue;
            for (std::size_t c = 0; c < cols.size(); ++c) obj[c] += d[i][c];
            objconst += dconst[i];
        }
    }

    // Returns false when the pivot budget runs out.
    bool optimize(long budget) {
        for (;;) {
            // Bland: entering column with negative cost and least var id
            std::size_t enter = cols.size();
            std::size_t enter_var = static_cast<std::size_t>(-1);
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (obj[c] < 0 && cols[c] < enter_var) {
                    enter = c;
                    enter_var = cols[c];
                }
            }
            if (enter == cols.size()) return true;  // optimal

            // ratio test; ties broken by least basic var id
            std::size_t leave = m;
            Rational best_ratio;
            for (std::size_t r = 0; r < m; ++r) {
                if (d[r][enter] >= 0) continue;
                Rational ratio = dconst[r] / -d[r][enter];
                if (leave == m || ratio < best_ratio ||
                    (ratio == best_ratio && basic[r] < basic[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == m) {
                // w is bounded below by 0, so a cost-reducing ray cannot exist
                throw std::logic_error(
                    "phase one: unbounded improving direction");
            }
            if (++pivots > budget) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r0, std::size_t e) {
        Rational a_e = d[r0][e];
        Rational inv = Rational(-1) / a_e;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c == e) continue;
            if (d[r0][c] != 0) d[r0][c] *= inv;
        }
        d[r0][e] = -inv;
        dconst[r0] *= inv;
        std::swap(basic[r0], cols[e]);

        for (std::size_t r = 0; r < m; ++r) {
            if (r == r0) continue;
            if (d[r][e] == 0) continue;
            Rational alpha = d[r][e];
            d[r][e] = 0;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (d[r0][c] != 0) d[r][c] += alpha * d[r0][c];
            }
            dconst[r] += alpha * dconst[r0];
        }
        if (obj[e] != 0) {
            Rational alpha = obj[e];
            obj[e] = 0;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (d[r0][c] != 0) obj[c] += alpha * d[r0][c];
            }
            objconst += alpha * dconst[r0];
        }
    }

    std::vector<Rational> primal_point() const {
        std::vector<Rational> x(nv, Rational(0));
        for (std::size_t r = 0; r < m; ++r) {
            if (basic[r] < nv) {
                x[basic[r]] += dconst[r];
            } else if (basic[r] < 2 * nv) {
                x[basic[r] - nv] -= dconst[r];
            }
        }
        return x;
    }

    // Duals of the working rows: the reduced cost of each surplus column.
    std::vector<Rational> duals() const {
        std::vector<Rational> y(m, Rational(0));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c] >= sbase && cols[c] < zbase) {
                y[cols[c] - sbase] = obj[c];
            }
        }
        return y;
    }
};

Rational row_value(const LPRow& row, const std::vector<Rational>& x) {
    Rational lhs = 0;
    for (const auto& [var, c] : row.coeffs) lhs += c * x[var];
    return lhs;
}

}  // namespace

LPOutcome solve_feasibility(const LPProblem& p, const LpLimits& lim) {
    const std::size_t nvars = p.variable_count();
    const std::vector<LPRow>& rows = p.rows();
    long budget = lim.pivot_budget;
    long pivots_spent = 0;

    std::vector<std::size_t> active;
    std::vector<bool> in_active(rows.size(), false);
    auto activate = [&](std::size_t i) {
        if (!in_active[i]) {
            in_active[i] = true;
            active.push_back(i);
        }
    };
    if (rows.size() <= 4096) {
        for (std::size_t i = 0; i < rows.size(); ++i) activate(i);
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].kind != LPRow::Kind::Submodularity) activate(i);
        }
    }

    for (;;) {
        std::vector<const LPRow*> working;
        working.reserve(active.size());
        for (std::size_t i : active) working.push_back(&rows[i]);

        PhaseOne solver(working, nvars);
        bool done = solver.optimize(budget - pivots_spent);
        pivots_spent += solver.pivots;
        if (!done) {
            return LpBudgetExhausted{
                pivots_spent, "pivot budget exhausted with " +
                                  std::to_string(active.size()) +
                                  " rows in the working set"};
        }

        if (solver.objconst > 0) {
            // the working subsystem is already contradictory; spread its
            // multipliers over the full row list
            std::vector<Rational> y = solver.duals();
            FarkasCertificate cert;
            cert.multipliers.assign(rows.size(), Rational(0));
            for (std::size_t j = 0; j < active.size(); ++j) {
                cert.multipliers[active[j]] = y[j];
            }
            if (!verify_farkas(p, cert)) {
                throw std::logic_error(
                    "solve_feasibility: extracted multipliers fail "
                    "verification");
            }
            return LpInfeasible{std::move(cert)};
        }

        std::vector<Rational> x = solver.primal_point();
        // hunt for rows the working set has not pinned down yet
        std::vector<std::pair<Rational, std::size_t>> violated;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (in_active[i]) continue;
            Rational slack = row_value(rows[i], x) - rows[i].rhs;
            if (slack < 0) violated.emplace_back(-slack, i);
        }
        if (violated.empty()) {
            if (!satisfies_all_rows(p, x)) {
                throw std::logic_error(
                    "solve_feasibility: accepted point fails re-check");
            }
            return LpFeasible{std::move(x)};
        }
        std::sort(violated.begin(), violated.end(),
                  [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                  });
        std::size_t batch = std::min<std::size_t>(violated.size(), 1024);
        for (std::size_t j = 0; j < batch; ++j) activate(violated[j].second);
    }
}

}  // namespace pliable
