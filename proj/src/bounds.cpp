#include "nilpact/bounds.hpp"

#include <cstdlib>
#include <optional>

namespace nilpact {

namespace {

std::optional<long long> env_override() {
    static const std::optional<long long> value = []() -> std::optional<long long> {
        const char* raw = std::getenv("NILPOTENT_ACTIONS_BOUND");
        if (raw == nullptr || *raw == '\0') return std::nullopt;
        char* end = nullptr;
        long long v = std::strtoll(raw, &end, 10);
        if (end == raw || v <= 0) return std::nullopt;
        return v;
    }();
    return value;
}

}  // namespace

long long exhaustive_bound(long long def) {
    if (auto v = env_override()) return *v;
    return def;
}

}  // namespace nilpact
