#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace pbac {

// One of the four decision values. The same four values are used for
// target evaluation and for access-control (policy) evaluation; the
// Space tag keeps the two apart.
enum class Outcome : std::uint8_t {
    One   = 0,  // full match / permit
    Zero  = 1,  // partial match (type+name)
    Bot   = 2,  // weaker partial match
    Cross = 3,  // no match / not applicable
};

enum class Space : std::uint8_t { Target, Policy };

inline constexpr std::array<Outcome, 4> kAllOutcomes = {
    Outcome::One, Outcome::Zero, Outcome::Bot, Outcome::Cross};

// Canonical order: One > Zero > Bot > Cross. Other orders exist only as
// operator-table annotations, never as stored state.
constexpr int rank(Outcome v) {
    switch (v) {
        case Outcome::One:   return 3;
        case Outcome::Zero:  return 2;
        case Outcome::Bot:   return 1;
        case Outcome::Cross: return 0;
    }
    return 0;
}

constexpr Outcome outcome_max(Outcome a, Outcome b) { return rank(a) >= rank(b) ? a : b; }
constexpr Outcome outcome_min(Outcome a, Outcome b) { return rank(a) <= rank(b) ? a : b; }

constexpr std::string_view outcome_token(Outcome v) {
    switch (v) {
        case Outcome::One:   return "1";
        case Outcome::Zero:  return "0";
        case Outcome::Bot:   return "B";
        case Outcome::Cross: return "X";
    }
    return "?";
}

inline std::optional<Outcome> outcome_from_token(std::string_view tok) {
    if (tok == "1") return Outcome::One;
    if (tok == "0") return Outcome::Zero;
    if (tok == "B") return Outcome::Bot;
    if (tok == "X") return Outcome::Cross;
    return std::nullopt;
}

constexpr std::string_view space_suffix(Space s) {
    return s == Space::Target ? "T" : "P";
}

// A decision value tagged with the space it lives in.
struct Decision {
    Outcome outcome;
    Space   space;

    constexpr bool operator==(const Decision&) const = default;

    std::string str() const {
        return std::string(outcome_token(outcome)) + std::string(space_suffix(space));
    }
};

constexpr Decision target(Outcome v) { return {v, Space::Target}; }
constexpr Decision policy(Outcome v) { return {v, Space::Policy}; }

// The 1:1 embedding used when a fresh provenance pattern is evaluated
// inside an access-control section.
constexpr Decision to_policy(Decision d) { return {d.outcome, Space::Policy}; }

inline std::ostream& operator<<(std::ostream& os, Outcome v) { return os << outcome_token(v); }
inline std::ostream& operator<<(std::ostream& os, const Decision& d) { return os << d.str(); }

inline std::optional<Decision> decision_from_string(std::string_view s) {
    if (s.size() != 2) return std::nullopt;
    auto v = outcome_from_token(s.substr(0, 1));
    if (!v) return std::nullopt;
    if (s[1] == 'T') return Decision{*v, Space::Target};
    if (s[1] == 'P') return Decision{*v, Space::Policy};
    return std::nullopt;
}

}  // namespace pbac
