#include "pliable/config.hpp"

#include <cstdlib>
#include <string>

namespace pliable::limits {

long env_override(const char* name, long fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0') return fallback;
    return v;
}

}  // namespace pliable::limits
