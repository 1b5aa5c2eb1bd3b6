#include "pliable/family.hpp"

#include <algorithm>
#include <set>

namespace pliable {

std::string to_string(ProvenanceKind k) {
    switch (k) {
        case ProvenanceKind::Initial: return "initial";
        case ProvenanceKind::Intersection: return "intersection";
        case ProvenanceKind::Difference: return "difference";
    }
    throw std::logic_error("unreachable ProvenanceKind");
}

std::string to_string(ProvenanceRule r) {
    switch (r) {
        case ProvenanceRule::A: return "a";
        case ProvenanceRule::BI: return "b-i";
        case ProvenanceRule::BII: return "b-ii";
        case ProvenanceRule::BIII: return "b-iii";
    }
    throw std::logic_error("unreachable ProvenanceRule");
}

namespace {

ProvenanceKind kind_from_string(const std::string& s) {
    if (s == "initial") return ProvenanceKind::Initial;
    if (s == "intersection") return ProvenanceKind::Intersection;
    if (s == "difference") return ProvenanceKind::Difference;
    throw ParseError("unknown provenance kind '" + s + "'");
}

ProvenanceRule rule_from_string(const std::string& s) {
    if (s == "a") return ProvenanceRule::A;
    if (s == "b-i") return ProvenanceRule::BI;
    if (s == "b-ii") return ProvenanceRule::BII;
    if (s == "b-iii") return ProvenanceRule::BIII;
    throw ParseError("unknown provenance rule '" + s + "'");
}

}  // namespace

Provenance Provenance::initial() {
    return Provenance{ProvenanceKind::Initial, std::nullopt, std::nullopt,
                      std::nullopt};
}

Provenance Provenance::intersection(std::size_t a, std::size_t b) {
    return Provenance{ProvenanceKind::Intersection, a, b, ProvenanceRule::A};
}

Provenance Provenance::difference(std::size_t a, std::size_t b,
                                  ProvenanceRule r) {
    return Provenance{ProvenanceKind::Difference, a, b, r};
}

Family::Family(GroundSet g) : ground_(g) {}

std::size_t Family::insert(ESet s, int generation,
                           std::optional<Provenance> provenance) {
    if (s.ground_size() != ground_.n()) {
        throw GroundMismatchError("Family::insert: set from a different ground");
    }
    if (index_.contains(s)) {
        throw FamilyError("Family::insert: duplicate member " + s.to_string());
    }
    int max_gen = max_generation();
    if (generation < max_gen) {
        throw FamilyError("Family::insert: stale generation " +
                          std::to_string(generation) + " (current is " +
                          std::to_string(max_gen) + ")");
    }
    if (generation > max_gen + 1) {
        throw FamilyError("Family::insert: generation gap, " +
                          std::to_string(generation) + " after " +
                          std::to_string(max_gen));
    }
    if (provenance) {
        const Provenance& p = *provenance;
        bool has_parents = p.parent_a.has_value() || p.parent_b.has_value();
        if (p.kind == ProvenanceKind::Initial) {
            if (generation != 0 || has_parents || p.rule.has_value()) {
                throw FamilyError(
                    "Family::insert: initial provenance requires generation 0 "
                    "and no parents");
            }
        } else {
            if (generation == 0) {
                throw FamilyError(
                    "Family::insert: generation 0 member with derived "
                    "provenance");
            }
            if (!p.parent_a || !p.parent_b || !p.rule) {
                throw FamilyError(
                    "Family::insert: derived provenance needs both parents "
                    "and a rule");
            }
            if (*p.parent_a >= members_.size() ||
                *p.parent_b >= members_.size()) {
                throw FamilyError("Family::insert: provenance parent out of "
                                  "range");
            }
            const Member& pa = members_[*p.parent_a];
            const Member& pb = members_[*p.parent_b];
            if (pa.generation >= generation || pb.generation >= generation) {
                throw FamilyError(
                    "Family::insert: provenance parents must come from "
                    "strictly earlier generations");
            }
            bool rule_matches_kind =
                (p.kind == ProvenanceKind::Intersection)
                    ? (*p.rule == ProvenanceRule::A)
                    : (*p.rule != ProvenanceRule::A);
            if (!rule_matches_kind) {
                throw FamilyError("Family::insert: provenance rule does not "
                                  "match its kind");
            }
            ESet expected = (p.kind == ProvenanceKind::Intersection)
                                ? (pa.set & pb.set)
                                : (pa.set - pb.set);
            if (expected != s) {
                throw FamilyError(
                    "Family::insert: provenance does not reproduce the set (" +
                    expected.to_string() + " != " + s.to_string() + ")");
            }
        }
    } else if (generation != 0 && members_.empty()) {
        throw FamilyError("Family::insert: first generation must be 0");
    }
    members_.push_back(Member{std::move(s), generation, provenance});
    index_.emplace(members_.back().set, members_.size() - 1);
    return members_.size() - 1;
}

bool Family::contains(const ESet& s) const { return index_.contains(s); }

std::optional<std::size_t> Family::find(const ESet& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Family::max_generation() const {
    return members_.empty() ? -1 : members_.back().generation;
}

std::vector<std::size_t> Family::generation_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(max_generation() + 1),
                                   0);
    for (const Member& m : members_) {
        sizes[static_cast<std::size_t>(m.generation)]++;
    }
    return sizes;
}

nlohmann::ordered_json Family::to_json() const {
    nlohmann::ordered_json doc;
    doc["k"] = ground_.k();
    doc["sets"] = nlohmann::ordered_json::array();
    for (const Member& m : members_) {
        nlohmann::ordered_json entry;
        entry["elements"] = m.set.elements();
        entry["generation"] = m.generation;
        if (m.provenance) {
            nlohmann::ordered_json prov;
            prov["kind"] = to_string(m.provenance->kind);
            if (m.provenance->parent_a) prov["parent_a"] = *m.provenance->parent_a;
            if (m.provenance->parent_b) prov["parent_b"] = *m.provenance->parent_b;
            if (m.provenance->rule) prov["rule"] = to_string(*m.provenance->rule);
            entry["provenance"] = std::move(prov);
        }
        doc["sets"].push_back(std::move(entry));
    }
    return doc;
}

Family Family::from_json(const nlohmann::json& doc,
                         std::vector<std::string>* warnings) {
    if (!doc.is_object() || !doc.contains("k") || !doc.contains("sets")) {
        throw ParseError("family document must be an object with 'k' and 'sets'");
    }
    if (!doc["k"].is_number_integer()) {
        throw ParseError("family document: 'k' must be an integer");
    }
    int k = doc["k"].get<int>();
    GroundSet g(k);
    Family f(g);
    if (!doc["sets"].is_array()) {
        throw ParseError("family document: 'sets' must be an array");
    }
    for (const auto& entry : doc["sets"]) {
        if (!entry.is_object() || !entry.contains("elements") ||
            !entry.contains("generation")) {
            throw ParseError(
                "family document: each set needs 'elements' and 'generation'");
        }
        ESet s = ESet::empty(g);
        for (const auto& e : entry["elements"]) {
            if (!e.is_number_unsigned()) {
                throw ParseError("family document: element ids must be "
                                 "non-negative integers");
            }
            auto id = e.get<std::uint64_t>();
            if (id >= g.n()) {
                throw ParseError("family document: element id " +
                                 std::to_string(id) + " out of range for k = " +
                                 std::to_string(k));
            }
            s.set(static_cast<Element>(id));
        }
        int gen = entry["generation"].get<int>();
        std::optional<Provenance> prov;
        if (entry.contains("provenance")) {
            const auto& p = entry["provenance"];
            if (!p.is_object() || !p.contains("kind")) {
                throw ParseError("family document: provenance needs a 'kind'");
            }
            Provenance pv;
            pv.kind = kind_from_string(p["kind"].get<std::string>());
            if (p.contains("parent_a")) pv.parent_a = p["parent_a"].get<std::size_t>();
            if (p.contains("parent_b")) pv.parent_b = p["parent_b"].get<std::size_t>();
            if (p.contains("rule")) pv.rule = rule_from_string(p["rule"].get<std::string>());
            prov = pv;
        }
        if (warnings && (s.none() || s.all())) {
            warnings->push_back("member " + s.to_string() +
                                (s.none() ? " is the empty set" : " is the full ground set"));
        }
        f.insert(std::move(s), gen, prov);
    }
    return f;
}

bool Family::operator==(const Family& o) const {
    if (ground_ != o.ground_ || members_.size() != o.members_.size())
        return false;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const Member& a = members_[i];
        const Member& b = o.members_[i];
        if (a.set != b.set || a.generation != b.generation ||
            a.provenance != b.provenance)
            return false;
    }
    return true;
}

bool same_sets_by_generation(const Family& a, const Family& b) {
    if (a.ground() != b.ground() || a.size() != b.size()) return false;
    std::set<std::pair<int, ESet>> sa, sb;
    for (const Member& m : a.members()) sa.emplace(m.generation, m.set);
    for (const Member& m : b.members()) sb.emplace(m.generation, m.set);
    return sa == sb;
}

}  // namespace pliable
