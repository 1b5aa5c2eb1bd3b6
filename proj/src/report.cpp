#include "pliable/report.hpp"

#include <sstream>

namespace pliable {

nlohmann::ordered_json eset_to_json(const ESet& s) {
    return nlohmann::ordered_json(s.elements());
}

nlohmann::ordered_json ViolationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["property"] = property;
    doc["ok"] = ok;
    doc["witnesses"] = nlohmann::ordered_json::array();
    for (const Witness& w : witnesses) {
        nlohmann::ordered_json entry;
        entry["members"] = w.members;
        entry["sets"] = nlohmann::ordered_json::array();
        for (const ESet& s : w.sets) entry["sets"].push_back(eset_to_json(s));
        entry["missing"] = nlohmann::ordered_json::array();
        for (const ESet& s : w.missing) entry["missing"].push_back(eset_to_json(s));
        entry["note"] = w.note;
        doc["witnesses"].push_back(std::move(entry));
    }
    return doc;
}

std::string ViolationReport::to_text() const {
    std::ostringstream os;
    os << "property " << property << ": " << (ok ? "ok" : "violated") << "\n";
    for (const Witness& w : witnesses) {
        os << "  witness:";
        for (const ESet& s : w.sets) os << ' ' << s.to_string();
        if (!w.missing.empty()) {
            os << " missing:";
            for (const ESet& s : w.missing) os << ' ' << s.to_string();
        }
        if (!w.note.empty()) os << " (" << w.note << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace pliable
