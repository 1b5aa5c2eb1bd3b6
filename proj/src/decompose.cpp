#include "pliable/decompose.hpp"

#include <optional>

namespace pliable {

ExpressionTree ExpressionTree::make_leaf(const GroundSet& g, int coordinate) {
    ExpressionTree t;
    t.root_ = std::make_unique<Node>();
    t.root_->leaf = coordinate;
    t.root_->value = coordinate_set(g, coordinate);
    return t;
}

ExpressionTree ExpressionTree::make_diff(ExpressionTree left,
                                         ExpressionTree right) {
    ExpressionTree t;
    t.root_ = std::make_unique<Node>();
    t.root_->value = left.root_->value - right.root_->value;
    t.root_->left = std::move(left.root_);
    t.root_->right = std::move(right.root_);
    return t;
}

namespace {

void render(const ExpressionTree::Node& n, std::string& out) {
    if (n.is_leaf()) {
        out += "V" + std::to_string(n.leaf);
        return;
    }
    out += '(';
    render(*n.left, out);
    out += " - ";
    render(*n.right, out);
    out += ')';
}

nlohmann::ordered_json node_json(const ExpressionTree::Node& n) {
    nlohmann::ordered_json j;
    if (n.is_leaf()) {
        j["leaf"] = n.leaf;
    } else {
        j["op"] = "diff";
        j["left"] = node_json(*n.left);
        j["right"] = node_json(*n.right);
    }
    j["value"] = n.value.elements();
    return j;
}

}  // namespace

std::string ExpressionTree::to_text() const {
    std::string out;
    render(*root_, out);
    return out;
}

nlohmann::ordered_json ExpressionTree::to_json() const {
    return node_json(*root_);
}

namespace {

// The unique unit coordinate of a set, or nullopt.
std::optional<int> sole_unit(const GroundSet& g, const ESet& s) {
    std::vector<int> units = unit_indices_in(g, s);
    if (units.size() == 1) return units.front();
    return std::nullopt;
}

struct Resolver {
    const Family& f;
    const GroundSet& g;

    // Valid decomposition pair for member m (unit coordinate i): members
    // (p, q) with f[p] - f[q] == f[m], crossing, v_{i} in f[p], f[q]
    // holding exactly one unit of index < i, gen(p) <= gen(m) and
    // gen(q) < gen(m).
    bool pair_valid(std::size_t m, int i, std::size_t p, std::size_t q) const {
        if (p == m || q == m || p == q) return false;
        const Member& sm = f[m];
        const Member& sp = f[p];
        const Member& sq = f[q];
        if (sp.generation > sm.generation) return false;
        if (sq.generation > sm.generation - 1) return false;
        if (!sp.set.test(g.unit_vector(i))) return false;
        std::optional<int> uq = sole_unit(g, sq.set);
        if (!uq || *uq >= i) return false;
        if (sp.set - sq.set != sm.set) return false;
        return crosses(sp.set, sq.set);
    }

    std::pair<std::size_t, std::size_t> find_pair(std::size_t m, int i) const {
        // recorded provenance first, when it already has the needed shape
        const std::optional<Provenance>& prov = f[m].provenance;
        if (prov && prov->kind == ProvenanceKind::Difference &&
            prov->parent_a && prov->parent_b &&
            pair_valid(m, i, *prov->parent_a, *prov->parent_b)) {
            return {*prov->parent_a, *prov->parent_b};
        }
        // otherwise search every pair, preferring shallow right subtrees:
        // minimize (gen of S'', gen of S', bit value of S')
        std::optional<std::pair<std::size_t, std::size_t>> best;
        auto better = [&](std::size_t p, std::size_t q) {
            if (!best) return true;
            auto [bp, bq] = *best;
            if (f[q].generation != f[bq].generation)
                return f[q].generation < f[bq].generation;
            if (f[p].generation != f[bp].generation)
                return f[p].generation < f[bp].generation;
            return f[p].set < f[bp].set;
        };
        for (std::size_t p = 0; p < f.size(); ++p) {
            for (std::size_t q = 0; q < f.size(); ++q) {
                if (!pair_valid(m, i, p, q)) continue;
                if (better(p, q)) best = {p, q};
            }
        }
        if (!best) {
            throw Error("express: no crossing difference pair rewrites member " +
                        f[m].set.to_string());
        }
        return *best;
    }

    ExpressionTree build(std::size_t m) const {
        const Member& member = f[m];
        if (member.generation == 0) {
            std::optional<int> unit = sole_unit(g, member.set);
            if (!unit || member.set != coordinate_set(g, *unit)) {
                throw Error(
                    "express: generation-0 member is not a coordinate set: " +
                    member.set.to_string());
            }
            return ExpressionTree::make_leaf(g, *unit);
        }
        std::optional<int> unit = sole_unit(g, member.set);
        if (!unit) {
            throw Error("express: member " + member.set.to_string() +
                        " does not hold exactly one unit vector");
        }
        auto [p, q] = find_pair(m, *unit);
        // Recursion terminates: the left branch keeps its generation or
        // drops while the set strictly grows (the pair crosses, so S'
        // exceeds S' - S''), and the right branch is strictly older.
        return ExpressionTree::make_diff(build(p), build(q));
    }
};

void walk_leaves(const ExpressionTree::Node& n,
                 std::vector<const ExpressionTree::Node*>& leaves) {
    if (n.is_leaf()) {
        leaves.push_back(&n);
        return;
    }
    walk_leaves(*n.left, leaves);
    walk_leaves(*n.right, leaves);
}

ESet reevaluate(const ExpressionTree::Node& n, const GroundSet& g,
                ExpressionCheck& check) {
    auto complain = [&](std::string reason) {
        check.ok = false;
        check.reasons.push_back(std::move(reason));
    };
    if (n.is_leaf()) {
        if (n.leaf < 1 || n.leaf > g.k()) {
            complain("leaf coordinate " + std::to_string(n.leaf) +
                     " out of range");
            return n.value;
        }
        ESet v = coordinate_set(g, n.leaf);
        if (v != n.value) {
            complain("leaf value differs from V" + std::to_string(n.leaf));
        }
        return v;
    }
    ESet l = reevaluate(*n.left, g, check);
    ESet r = reevaluate(*n.right, g, check);
    if (!crosses(l, r)) {
        complain("difference node children do not cross: " + l.to_string() +
                 " vs " + r.to_string());
    }
    ESet v = l - r;
    if (v != n.value) complain("difference node cache is stale");
    return v;
}

}  // namespace

ExpressionTree express(const Family& f, std::size_t member_index) {
    if (member_index >= f.size()) {
        throw Error("express: member index out of range");
    }
    const Member& m = f[member_index];
    if (m.generation == 0) {
        throw Error("express: member " + m.set.to_string() +
                    " is generation 0");
    }
    std::vector<int> units = unit_indices_in(f.ground(), m.set);
    if (units.size() != 1) {
        throw Error("express: member " + m.set.to_string() + " holds " +
                    std::to_string(units.size()) +
                    " unit vectors, need exactly one");
    }
    Resolver r{f, f.ground()};
    return r.build(member_index);
}

ExpressionCheck verify_expression(const ExpressionTree& t, const ESet& s,
                                  int i, const GroundSet& g) {
    ExpressionCheck check;
    ESet value = reevaluate(t.root(), g, check);
    if (value != s) {
        check.ok = false;
        check.reasons.push_back("tree evaluates to " + value.to_string() +
                                ", expected " + s.to_string());
    }

    std::vector<const ExpressionTree::Node*> leaves;
    walk_leaves(t.root(), leaves);
    const ExpressionTree::Node* leftmost = &t.root();
    while (!leftmost->is_leaf()) leftmost = leftmost->left.get();
    if (leftmost->leaf != i) {
        check.ok = false;
        check.reasons.push_back("leftmost leaf is V" +
                                std::to_string(leftmost->leaf) +
                                ", expected V" + std::to_string(i));
    }
    for (const ExpressionTree::Node* leaf : leaves) {
        if (leaf == leftmost) continue;
        if (leaf->leaf >= i) {
            check.ok = false;
            check.reasons.push_back("leaf V" + std::to_string(leaf->leaf) +
                                    " must have index below " +
                                    std::to_string(i));
        }
    }
    return check;
}

}  // namespace pliable
