#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "pliable/core.hpp"

namespace pliable {

enum class ProvenanceKind { Initial, Intersection, Difference };
enum class ProvenanceRule { A, BI, BII, BIII };

std::string to_string(ProvenanceKind k);
std::string to_string(ProvenanceRule r);

// How a member entered the family.  Initial members have no parents; an
// intersection member is parent_a & parent_b (rule a); a difference member
// is parent_a - parent_b (one of the b rules).  Parent refs are member
// indices of strictly earlier generations.
struct Provenance {
    ProvenanceKind kind;
    std::optional<std::size_t> parent_a;
    std::optional<std::size_t> parent_b;
    std::optional<ProvenanceRule> rule;

    static Provenance initial();
    static Provenance intersection(std::size_t a, std::size_t b);
    static Provenance difference(std::size_t a, std::size_t b,
                                 ProvenanceRule r);

    bool operator==(const Provenance&) const = default;
};

struct Member {
    ESet set;
    int generation = 0;
    std::optional<Provenance> provenance;
};

// An ordered set family over one ground set.  Members are unique as sets
// and carry a generation number; generations are contiguous starting at 0
// and inserts may never go back to an earlier generation.  Iteration order
// is insertion order, which for constructed families is the canonical
// (generation, bit-vector value) order.
class Family {
public:
    explicit Family(GroundSet g);

    // Returns the index of the new member.  Throws FamilyError on a
    // duplicate set, a stale or gapped generation, or provenance that does
    // not reproduce the set from its parents.
    std::size_t insert(ESet s, int generation,
                       std::optional<Provenance> provenance = std::nullopt);

    bool contains(const ESet& s) const;
    std::optional<std::size_t> find(const ESet& s) const;

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const Member& operator[](std::size_t i) const { return members_.at(i); }
    const std::vector<Member>& members() const { return members_; }
    const GroundSet& ground() const { return ground_; }

    int max_generation() const;  // -1 when empty
    // Number of members in each generation 0..max_generation().
    std::vector<std::size_t> generation_sizes() const;

    nlohmann::ordered_json to_json() const;
    // Accepts any schema-valid document; appends a warning per member equal
    // to {} or V when a sink is supplied.  Throws ParseError on malformed
    // input and FamilyError on inconsistent members.
    static Family from_json(const nlohmann::json& doc,
                            std::vector<std::string>* warnings = nullptr);

    bool operator==(const Family& o) const;

private:
    GroundSet ground_;
    std::vector<Member> members_;
    std::unordered_map<ESet, std::size_t, ESet::Hash> index_;
};

// True when both families hold the same sets at the same generations,
// ignoring member order within a generation and all provenance.
bool same_sets_by_generation(const Family& a, const Family& b);

}  // namespace pliable
