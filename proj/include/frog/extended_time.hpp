#pragma once
// Passage/hitting times with explicit censoring.

#include <cstdint>
#include <string>

namespace frog {

// Finite(k): exact value k.  Censored(h): the true value exceeds h but is
// otherwise unknown (horizon truncation).  Infinite: no admissible chain
// exists regardless of horizon (e.g. the start site is vacant).
struct ExtendedTime {
    enum class Kind : std::uint8_t { Finite = 0, Censored = 1, Infinite = 2 };

    Kind kind = Kind::Infinite;
    std::int64_t value = 0;

    static ExtendedTime finite(std::int64_t t) { return {Kind::Finite, t}; }
    static ExtendedTime censored(std::int64_t h) { return {Kind::Censored, h}; }
    static ExtendedTime infinite() { return {Kind::Infinite, 0}; }

    bool is_finite() const { return kind == Kind::Finite; }
    bool is_censored() const { return kind == Kind::Censored; }
    bool is_infinite() const { return kind == Kind::Infinite; }

    // Total order consistent with the semantics: Finite(k) sorts before
    // Censored(h) whenever k <= h, and Infinite after everything.
    bool operator<(const ExtendedTime& o) const {
        if (is_infinite() || o.is_infinite()) return !is_infinite() && o.is_infinite();
        if (value != o.value) return value < o.value;
        return kind < o.kind;  // Finite(k) < Censored(k)
    }
    bool operator==(const ExtendedTime& o) const {
        if (kind != o.kind) return false;
        return is_infinite() || value == o.value;
    }
    bool operator!=(const ExtendedTime& o) const { return !(*this == o); }

    std::string str() const {
        switch (kind) {
            case Kind::Finite: return std::to_string(value);
            case Kind::Censored: return "censored(" + std::to_string(value) + ")";
            default: return "inf";
        }
    }
};

}  // namespace frog
