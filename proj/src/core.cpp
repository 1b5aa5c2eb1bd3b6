#include "pliable/core.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "pliable/config.hpp"

namespace pliable {

namespace {

constexpr int kMaxRepresentableK = 26;  // 2^26 bits = 8 MiB per set

std::size_t words_for(Element n) {
    return (static_cast<std::size_t>(n) + 63) / 64;
}

}  // namespace

GroundSet::GroundSet(int k) : k_(k) {
    if (k < 1 || k > kMaxRepresentableK) {
        throw Error("GroundSet: k must be in [1, " +
                    std::to_string(kMaxRepresentableK) + "], got " +
                    std::to_string(k));
    }
    n_ = Element{1} << k;
}

Element GroundSet::unit_vector(int i) const {
    if (i < 1 || i > k_) {
        throw Error("unit_vector: coordinate " + std::to_string(i) +
                    " out of [1, " + std::to_string(k_) + "]");
    }
    return Element{1} << (i - 1);
}

Element GroundSet::vec_of_indexset(const std::vector<int>& indices) const {
    Element v = 0;
    for (int i : indices) {
        Element bit = unit_vector(i);
        if (v & bit) {
            throw Error("vec_of_indexset: repeated coordinate " +
                        std::to_string(i));
        }
        v |= bit;
    }
    return v;
}

std::optional<int> GroundSet::unit_index(Element e) const {
    if (e >= n_) {
        throw Error("unit_index: element id " + std::to_string(e) +
                    " out of range for k = " + std::to_string(k_));
    }
    if (e != 0 && (e & (e - 1)) == 0) {
        return std::countr_zero(e) + 1;
    }
    return std::nullopt;
}

ESet::ESet(Element n) : n_(n), w_(words_for(n), 0) {}

ESet ESet::empty(const GroundSet& g) { return ESet(g.n()); }

ESet ESet::full(const GroundSet& g) {
    ESet s(g.n());
    for (auto& w : s.w_) w = ~std::uint64_t{0};
    // mask off the bits above n-1 in the last word
    Element rem = g.n() % 64;
    if (rem != 0) s.w_.back() &= (std::uint64_t{1} << rem) - 1;
    return s;
}

ESet ESet::of(const GroundSet& g, const std::vector<Element>& elems) {
    ESet s(g.n());
    for (Element e : elems) s.set(e);
    return s;
}

ESet ESet::singleton(const GroundSet& g, Element e) {
    ESet s(g.n());
    s.set(e);
    return s;
}

void ESet::check_element(Element e) const {
    if (!valid()) throw Error("ESet: operation on default-constructed set");
    if (e >= n_) {
        throw Error("ESet: element id " + std::to_string(e) +
                    " out of range for ground of size " + std::to_string(n_));
    }
}

void ESet::check_same_ground(const ESet& o) const {
    if (n_ != o.n_) {
        throw GroundMismatchError(
            "ESet: mixed ground sets (" + std::to_string(n_) + " vs " +
            std::to_string(o.n_) + " elements)");
    }
    if (!valid()) throw Error("ESet: operation on default-constructed set");
}

bool ESet::test(Element e) const {
    check_element(e);
    return (w_[e >> 6] >> (e & 63)) & 1;
}

void ESet::set(Element e) {
    check_element(e);
    w_[e >> 6] |= std::uint64_t{1} << (e & 63);
}

void ESet::reset(Element e) {
    check_element(e);
    w_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
}

std::size_t ESet::count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool ESet::none() const {
    for (auto w : w_)
        if (w != 0) return false;
    return true;
}

bool ESet::all() const { return count() == n_; }

std::vector<Element> ESet::elements() const {
    std::vector<Element> out;
    out.reserve(count());
    for (std::size_t i = 0; i < w_.size(); ++i) {
        std::uint64_t w = w_[i];
        while (w != 0) {
            int b = std::countr_zero(w);
            out.push_back(static_cast<Element>(i * 64 + b));
            w &= w - 1;
        }
    }
    return out;
}

bool ESet::subset_of(const ESet& o) const {
    check_same_ground(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

bool ESet::proper_subset_of(const ESet& o) const {
    return subset_of(o) && *this != o;
}

bool ESet::disjoint_with(const ESet& o) const {
    check_same_ground(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & o.w_[i]) return false;
    return true;
}

ESet ESet::operator&(const ESet& o) const {
    check_same_ground(o);
    ESet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
}

ESet ESet::operator|(const ESet& o) const {
    check_same_ground(o);
    ESet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
}

ESet ESet::operator-(const ESet& o) const {
    check_same_ground(o);
    ESet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
}

ESet ESet::complement() const {
    if (!valid()) throw Error("ESet: operation on default-constructed set");
    ESet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    Element rem = n_ % 64;
    if (rem != 0) r.w_.back() &= (std::uint64_t{1} << rem) - 1;
    return r;
}

std::strong_ordering ESet::operator<=>(const ESet& o) const {
    if (n_ != o.n_) return n_ <=> o.n_;
    for (std::size_t i = w_.size(); i-- > 0;) {
        if (w_[i] != o.w_[i]) return w_[i] <=> o.w_[i];
    }
    return std::strong_ordering::equal;
}

std::string ESet::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (Element e : elements()) {
        if (!first) os << ',';
        os << e;
        first = false;
    }
    os << '}';
    return os.str();
}

std::size_t ESet::Hash::operator()(const ESet& s) const {
    // FNV-1a over the words, seeded with the width
    std::uint64_t h = 1469598103934665603ull ^ s.n_;
    for (auto w : s.w_) {
        h ^= w;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

ESet coordinate_set(const GroundSet& g, int i) {
    Element bit = g.unit_vector(i);
    ESet s = ESet::empty(g);
    for (Element e = 0; e < g.n(); ++e) {
        if (e & bit) s.set(e);
    }
    return s;
}

std::vector<int> unit_indices_in(const GroundSet& g, const ESet& s) {
    if (s.ground_size() != g.n()) {
        throw GroundMismatchError("unit_indices_in: set does not match ground");
    }
    std::vector<int> out;
    for (int i = 1; i <= g.k(); ++i) {
        if (s.test(g.unit_vector(i))) out.push_back(i);
    }
    return out;
}

bool crosses(const ESet& a, const ESet& b) {
    a.check_same_ground(b);
    bool inter = false, outside = false, ab = false, ba = false;
    Element rem = a.n_ % 64;
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
        std::uint64_t wa = a.w_[i], wb = b.w_[i];
        std::uint64_t mask = ~std::uint64_t{0};
        if (rem != 0 && i + 1 == a.w_.size())
            mask = (std::uint64_t{1} << rem) - 1;
        inter |= (wa & wb) != 0;
        outside |= (~(wa | wb) & mask) != 0;
        ab |= (wa & ~wb) != 0;
        ba |= (~wa & wb) != 0;
        if (inter && outside && ab && ba) return true;
    }
    return inter && outside && ab && ba;
}

SetAlgebra set_algebra(const ESet& a, const ESet& b) {
    return SetAlgebra{a & b, a | b, a - b, b - a, a.complement()};
}

}  // namespace pliable
