#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pliable/errors.hpp"

namespace pliable {

using Element = std::uint32_t;

// The ground set V = {0,1}^k.  Elements are the 2^k vertices of the
// hypercube, identified with ids 0..2^k-1: bit (j-1) of the id is
// coordinate j, so the id of v_I is sum_{j in I} 2^(j-1).  At k = 3 the ids
// read 0 = v_{}, 1 = v_{1}, 2 = v_{2}, 3 = v_{1,2}, 4 = v_{3}, 5 = v_{1,3},
// 6 = v_{2,3}, 7 = v_{1,2,3}.
class GroundSet {
public:
    explicit GroundSet(int k);

    int k() const { return k_; }
    Element n() const { return n_; }  // 2^k

    // Id of the unit vector v_{i}, 1-based coordinate.
    Element unit_vector(int i) const;

    // Id of v_I for an index set I of coordinates (1-based, distinct).
    Element vec_of_indexset(const std::vector<int>& indices) const;

    // Inverse of unit_vector: the coordinate i when e = v_{i}, otherwise
    // nullopt.  Throws on an out-of-range id.
    std::optional<int> unit_index(Element e) const;

    bool operator==(const GroundSet&) const = default;

private:
    int k_;
    Element n_;
};

// A subset of a ground set, stored as a bit vector of exactly 2^k bits.
// Equality is bitwise; all binary operations require both operands to come
// from ground sets of the same dimension.  Ordering compares the numeric
// value of the bit vector (element e contributes 2^e), which is the
// canonical tie-break and sort order used throughout.
class ESet {
public:
    ESet() = default;

    static ESet empty(const GroundSet& g);
    static ESet full(const GroundSet& g);
    static ESet of(const GroundSet& g, const std::vector<Element>& elems);
    static ESet singleton(const GroundSet& g, Element e);

    Element ground_size() const { return n_; }
    bool valid() const { return n_ != 0; }

    bool test(Element e) const;
    void set(Element e);
    void reset(Element e);

    std::size_t count() const;
    bool none() const;                 // S == {}
    bool all() const;                  // S == V
    std::vector<Element> elements() const;

    bool subset_of(const ESet& o) const;
    bool proper_subset_of(const ESet& o) const;
    bool disjoint_with(const ESet& o) const;

    ESet operator&(const ESet& o) const;
    ESet operator|(const ESet& o) const;
    ESet operator-(const ESet& o) const;
    ESet complement() const;

    bool operator==(const ESet& o) const { return n_ == o.n_ && w_ == o.w_; }
    // Numeric bit-vector value order; total within one ground set.
    std::strong_ordering operator<=>(const ESet& o) const;

    // Renders "{1,3,5,7}" with decimal element ids.
    std::string to_string() const;

    struct Hash {
        std::size_t operator()(const ESet& s) const;
    };

private:
    friend bool crosses(const ESet&, const ESet&);

    explicit ESet(Element n);
    void check_element(Element e) const;
    void check_same_ground(const ESet& o) const;

    Element n_ = 0;                 // bit count, 2^k
    std::vector<std::uint64_t> w_;  // ceil(n/64) words, unused high bits zero
};

// The coordinate set V_i = { v : v_i = 1 }, 1-based.
ESet coordinate_set(const GroundSet& g, int i);

// All coordinates i with v_{i} in s.  A set that lies inside some V_j can
// contain at most one unit vector, but arbitrary inputs may contain several.
std::vector<int> unit_indices_in(const GroundSet& g, const ESet& s);

// A and B cross when all four of A&B, V-(A|B), A-B, B-A are non-empty.
// Symmetric; allocation-free.
bool crosses(const ESet& a, const ESet& b);

// The four derived sets of a pair plus the complement of the first
// argument, computed in one pass.
struct SetAlgebra {
    ESet inter;
    ESet uni;
    ESet diff_ab;
    ESet diff_ba;
    ESet complement_a;
};

SetAlgebra set_algebra(const ESet& a, const ESet& b);

}  // namespace pliable
