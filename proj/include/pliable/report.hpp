#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "pliable/core.hpp"

namespace pliable {

// One replayable counterexample.  `members` are indices into the checked
// family and `sets` the corresponding bit vectors, so the violated
// condition can be re-evaluated without the family at hand; `missing` lists
// the derived sets the property required but did not find.
struct Witness {
    std::vector<std::size_t> members;
    std::vector<ESet> sets;
    std::vector<ESet> missing;
    std::string note;
};

struct ViolationReport {
    std::string property;
    bool ok = true;
    std::vector<Witness> witnesses;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

nlohmann::ordered_json eset_to_json(const ESet& s);

}  // namespace pliable
