#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "pliable/family.hpp"

namespace pliable {

// A difference expression over coordinate sets: leaves are V_j, inner
// nodes subtract their right child from their left.  Every node caches its
// value so verification can re-derive it independently.
class ExpressionTree {
public:
    struct Node {
        int leaf = 0;  // coordinate index when a leaf, 0 otherwise
        std::unique_ptr<Node> left;
        std::unique_ptr<Node> right;
        ESet value;

        bool is_leaf() const { return leaf != 0; }
    };

    static ExpressionTree make_leaf(const GroundSet& g, int coordinate);
    static ExpressionTree make_diff(ExpressionTree left, ExpressionTree right);

    const Node& root() const { return *root_; }
    const ESet& value() const { return root_->value; }

    // "(V3 - (V2 - V1))"
    std::string to_text() const;
    nlohmann::ordered_json to_json() const;

private:
    std::unique_ptr<Node> root_;
};

// Rewrites member s (generation >= 1, holding exactly one unit vector
// v_{i}) as a difference tree: some crossing member pair (S', S'') with
// s = S' - S'', v_{i} in S', S'' holding one unit vector of smaller index
// and coming from an earlier generation.  Recorded provenance is used when
// it already has that shape; otherwise every member pair is searched and
// the candidate minimizing (generation of S'', generation of S', bit value
// of S') is taken.  Throws when s is generation 0, holds no or several
// unit vectors, or no valid pair exists.
ExpressionTree express(const Family& f, std::size_t member_index);

struct ExpressionCheck {
    bool ok = true;
    std::vector<std::string> reasons;
};

// Re-derives every node value, then checks: the tree evaluates to s, the
// leftmost leaf is V_i, every other leaf is V_j with j < i, and the two
// children of every difference node cross.
ExpressionCheck verify_expression(const ExpressionTree& t, const ESet& s,
                                  int i, const GroundSet& g);

}  // namespace pliable
