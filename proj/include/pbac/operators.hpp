#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pbac/decision.hpp"
#include "pbac/errors.hpp"

namespace pbac {

// ── Operator identifiers ─────────────────────────────────────────────────────

enum class Op : std::uint8_t {
    // unary
    Not,
    Opt,
    Star,
    // binary, target algebra (also usable over policy values)
    Sqcup,
    Sqcap,
    Cup,
    Cap,
    Sqsubset,
    Wedge,
    Vee,
    Supset,
    Subset,
    Vdash,
    Dashv,
    // binary, order-aware policy combinators
    Ocup,
    Ocap,
    Fapp,
    Lapp,
};

enum class UaryOp : std::uint8_t { Any, All };  // any = pick highest, all = pick lowest

enum class Direction : std::uint8_t { Forward, Reverse };  // fwd / rev reference of t into p

enum class FinalizeMode : std::uint8_t { Pbd, Dbd };

inline constexpr std::array<Op, 18> kAllOps = {
    Op::Not,   Op::Opt,      Op::Star,  Op::Sqcup,  Op::Sqcap, Op::Cup,
    Op::Cap,   Op::Sqsubset, Op::Wedge, Op::Vee,    Op::Supset, Op::Subset,
    Op::Vdash, Op::Dashv,    Op::Ocup,  Op::Ocap,   Op::Fapp,  Op::Lapp};

// ── Truth tables ─────────────────────────────────────────────────────────────
//
// Binary cells are row-major: cell(a, b) = cells[rank-index(a) * 4 + index(b)]
// with rows and columns ordered 1, 0, B, X. The grids are encoded verbatim;
// where a grid disagrees with its annotated order rule, the grid wins and the
// disagreement is surfaced by the consistency report instead of being fixed.

using UnaryCells = std::array<Outcome, 4>;
using BinaryCells = std::array<Outcome, 16>;

namespace detail {
inline constexpr Outcome O1 = Outcome::One;
inline constexpr Outcome O0 = Outcome::Zero;
inline constexpr Outcome OB = Outcome::Bot;
inline constexpr Outcome OX = Outcome::Cross;
}  // namespace detail

constexpr std::size_t outcome_index(Outcome v) { return static_cast<std::size_t>(v); }

namespace tables {

using namespace detail;

inline constexpr UnaryCells kNot  = {O0, O1, OB, OX};
inline constexpr UnaryCells kOpt  = {O1, OB, O0, OX};
inline constexpr UnaryCells kStar = {OB, OX, O1, O0};

inline constexpr BinaryCells kSqcup = {
    O1, O1, O1, O1,
    O1, O0, O0, O0,
    O1, O0, OB, OB,
    O1, O0, OB, OX};

inline constexpr BinaryCells kSqcap = {
    O1, O0, OB, OX,
    O0, O0, OB, OX,
    OB, OB, OB, OX,
    OX, OX, OX, OX};

inline constexpr BinaryCells kCup = {
    O1, O0, OB, OX,
    O0, O0, OB, OX,
    OB, OB, OB, OB,
    OX, OX, OB, OX};

inline constexpr BinaryCells kCap = {
    O1, O0, OB, OX,
    O0, O0, O0, OX,
    OB, O0, OB, OX,
    OX, OX, OX, OX};

inline constexpr BinaryCells kSqsubset = {
    O1, O0, OX, OB,
    O0, O0, O0, O0,
    OB, O0, OB, OB,
    OX, O0, OB, OX};

inline constexpr BinaryCells kWedge = {
    O1, O1, OB, OX,
    O1, O0, OB, OX,
    OB, OB, OB, OX,
    OX, OX, OX, OX};

inline constexpr BinaryCells kVee = {
    O1, O1, O1, O1,
    O1, O0, OB, OX,
    O1, OB, OB, OX,
    O1, OX, OX, OX};

inline constexpr BinaryCells kSupset = {
    O1, O0, OB, O1,
    O0, O0, OB, O0,
    OB, OB, OB, OB,
    O1, O0, OB, OX};

inline constexpr BinaryCells kSubset = {
    O1, O1, O1, O1,
    O1, O0, O0, O0,
    O1, O0, OB, OB,
    O1, O0, OB, OX};

inline constexpr BinaryCells kVdash = {
    O1, O1, O1, O1,
    O1, O0, O0, O0,
    O1, O0, OB, OX,
    O1, O0, OX, OX};

inline constexpr BinaryCells kDashv = {
    O1, O0, OB, OX,
    O0, O0, O0, OX,
    OB, O0, OB, OX,
    OX, OX, OX, OX};

// Order-aware policy combinators.
inline constexpr BinaryCells kOcup = {
    O1, O1, O1, O1,
    O0, O0, O0, O0,
    O1, O0, OB, OB,
    O1, O0, OB, OX};

inline constexpr BinaryCells kOcap = {
    O1, O0, O1, O1,
    O1, O0, O0, O0,
    O1, O0, OB, OB,
    O1, O0, OB, OX};

inline constexpr BinaryCells kFapp = kOcup;  // printed grids coincide; asserted, not assumed
inline constexpr BinaryCells kLapp = kOcap;

// Transformation tables: row = target decision, column = tag.
inline constexpr BinaryCells kFwd = {
    O1, O1, O1, O1,
    O1, O0, O0, O0,
    O1, O0, OB, OB,
    O1, O0, OB, OX};

inline constexpr BinaryCells kRev = {
    O1, O0, OB, OX,
    O0, O0, OB, OX,
    OB, OB, OB, OX,
    OX, OX, OX, OX};

inline constexpr UnaryCells kPbd = {O1, O1, O1, OX};
inline constexpr UnaryCells kDbd = {O1, OX, OX, OX};

}  // namespace tables

// The two resolved variants of the generic order-aware combinator: the free
// cells are (1,0) and (0,1).
constexpr BinaryCells make_oplus(Outcome cell_one_zero, Outcome cell_zero_one) {
    BinaryCells cells = tables::kOcup;
    cells[outcome_index(Outcome::One) * 4 + outcome_index(Outcome::Zero)] = cell_one_zero;
    cells[outcome_index(Outcome::Zero) * 4 + outcome_index(Outcome::One)] = cell_zero_one;
    return cells;
}

// ── Registry ─────────────────────────────────────────────────────────────────

enum class TableKind : std::uint8_t { TargetOp, PolicyCombinator, Transformation, Finalizer };

// Declared characterization of a grid: min or max under a stated descending
// order of the four values. Kept so the consistency report can diff grids
// against the rule they were described with.
struct OrderRule {
    bool is_max;
    std::array<Outcome, 4> descending;
};

struct TableEntry {
    std::string_view name;
    int arity;  // 1 or 2
    TableKind kind;
    const Outcome* cells;  // 4 or 16 cells
    std::optional<OrderRule> order;
    // Alternative characterization of some cells (unset = not characterized);
    // used only for consistency reporting.
    std::array<std::optional<Outcome>, 4> alt{};
};

namespace detail {

inline const std::array<TableEntry, 22>& registry() {
    using namespace tables;
    auto ord = [](bool mx, Outcome a, Outcome b, Outcome c, Outcome d) {
        return std::optional<OrderRule>{OrderRule{mx, {a, b, c, d}}};
    };
    static const std::array<TableEntry, 22> entries = {{
        {"not", 1, TableKind::TargetOp, kNot.data(), std::nullopt, {}},
        {"opt", 1, TableKind::TargetOp, kOpt.data(), std::nullopt, {}},
        {"star", 1, TableKind::TargetOp, kStar.data(), std::nullopt, {}},
        {"sqcup", 2, TableKind::TargetOp, kSqcup.data(), ord(true, O1, O0, OB, OX), {}},
        {"sqcap", 2, TableKind::TargetOp, kSqcap.data(), ord(false, O1, O0, OB, OX), {}},
        {"cup", 2, TableKind::TargetOp, kCup.data(), ord(false, O1, O0, OX, OB), {}},
        {"cap", 2, TableKind::TargetOp, kCap.data(), ord(false, O1, OB, O0, OX), {}},
        {"sqsubset", 2, TableKind::TargetOp, kSqsubset.data(), ord(false, O1, OX, OB, O0), {}},
        {"wedge", 2, TableKind::TargetOp, kWedge.data(), ord(false, O0, O1, OB, OX), {}},
        {"vee", 2, TableKind::TargetOp, kVee.data(), ord(false, O0, OX, OB, O1), {}},
        {"supset", 2, TableKind::TargetOp, kSupset.data(), ord(false, OX, O1, O0, OB), {}},
        {"subset", 2, TableKind::TargetOp, kSubset.data(), ord(false, OX, OB, O0, O1), {}},
        {"vdash", 2, TableKind::TargetOp, kVdash.data(), ord(false, OB, OX, O0, O1), {}},
        {"dashv", 2, TableKind::TargetOp, kDashv.data(), ord(false, OX, O1, O0, OB), {}},
        {"ocup", 2, TableKind::PolicyCombinator, kOcup.data(), std::nullopt, {}},
        {"ocap", 2, TableKind::PolicyCombinator, kOcap.data(), std::nullopt, {}},
        {"fapp", 2, TableKind::PolicyCombinator, kFapp.data(), std::nullopt, {}},
        {"lapp", 2, TableKind::PolicyCombinator, kLapp.data(), std::nullopt, {}},
        {"fwd", 2, TableKind::Transformation, kFwd.data(), std::nullopt, {}},
        {"rev", 2, TableKind::Transformation, kRev.data(), std::nullopt, {}},
        {"pbd", 1, TableKind::Finalizer, kPbd.data(), std::nullopt,
         {O1, O1, OB, OB}},
        {"dbd", 1, TableKind::Finalizer, kDbd.data(), std::nullopt,
         {O1, OB, OB, std::nullopt}},
    }};
    return entries;
}

}  // namespace detail

inline std::span<const TableEntry> table_registry() { return detail::registry(); }

inline const TableEntry& table_entry(std::string_view name) {
    for (const auto& e : detail::registry())
        if (e.name == name) return e;
    throw ConfigError("unknown operator table: " + std::string(name));
}

constexpr std::string_view op_name(Op op) {
    switch (op) {
        case Op::Not: return "not";
        case Op::Opt: return "opt";
        case Op::Star: return "star";
        case Op::Sqcup: return "sqcup";
        case Op::Sqcap: return "sqcap";
        case Op::Cup: return "cup";
        case Op::Cap: return "cap";
        case Op::Sqsubset: return "sqsubset";
        case Op::Wedge: return "wedge";
        case Op::Vee: return "vee";
        case Op::Supset: return "supset";
        case Op::Subset: return "subset";
        case Op::Vdash: return "vdash";
        case Op::Dashv: return "dashv";
        case Op::Ocup: return "ocup";
        case Op::Ocap: return "ocap";
        case Op::Fapp: return "fapp";
        case Op::Lapp: return "lapp";
    }
    return "?";
}

inline std::optional<Op> op_from_name(std::string_view name) {
    for (Op op : kAllOps)
        if (op_name(op) == name) return op;
    return std::nullopt;
}

constexpr bool is_unary(Op op) { return op == Op::Not || op == Op::Opt || op == Op::Star; }

constexpr bool is_policy_combinator(Op op) {
    return op == Op::Ocup || op == Op::Ocap || op == Op::Fapp || op == Op::Lapp;
}

inline const TableEntry& table_entry(Op op) { return table_entry(op_name(op)); }

// ── Application ──────────────────────────────────────────────────────────────

inline Decision apply_unary(Op op, Decision x) {
    if (!is_unary(op))
        throw ConfigError("apply_unary: not a unary operator: " + std::string(op_name(op)));
    if (op == Op::Star && x.space != Space::Target)
        throw TypeError("star is defined over target decisions only");
    const TableEntry& e = table_entry(op);
    return {e.cells[outcome_index(x.outcome)], x.space};
}

inline Decision apply_binary(Op op, Decision a, Decision b) {
    if (is_unary(op))
        throw ConfigError("apply_binary: not a binary operator: " + std::string(op_name(op)));
    if (a.space != b.space)
        throw TypeError("operands of " + std::string(op_name(op)) + " must share a space: " +
                        a.str() + " vs " + b.str());
    if (is_policy_combinator(op) && a.space != Space::Policy)
        throw TypeError(std::string(op_name(op)) + " combines policy decisions only");
    const TableEntry& e = table_entry(op);
    return {e.cells[outcome_index(a.outcome) * 4 + outcome_index(b.outcome)], a.space};
}

constexpr std::string_view uary_name(UaryOp op) { return op == UaryOp::Any ? "any" : "all"; }

inline Decision apply_uary(UaryOp op, std::span<const Decision> xs) {
    if (xs.empty())
        throw ArgumentError(std::string(uary_name(op)) + "[] needs at least one operand");
    Decision acc = xs[0];
    for (const Decision& d : xs.subspan(1)) {
        if (d.space != acc.space)
            throw TypeError(std::string(uary_name(op)) + "[] operands must share a space");
        acc.outcome = op == UaryOp::Any ? outcome_max(acc.outcome, d.outcome)
                                        : outcome_min(acc.outcome, d.outcome);
    }
    return acc;
}

// Low-level transformation cell: row = target value, column = tag.
inline Outcome transform_cell(Outcome t, Direction dir, Outcome tag) {
    const BinaryCells& cells = dir == Direction::Forward ? tables::kFwd : tables::kRev;
    return cells[outcome_index(t) * 4 + outcome_index(tag)];
}

inline Outcome finalize_cell(Outcome p, FinalizeMode mode) {
    const UnaryCells& cells = mode == FinalizeMode::Pbd ? tables::kPbd : tables::kDbd;
    return cells[outcome_index(p)];
}

// ── Table fixtures ───────────────────────────────────────────────────────────
//
// Each table ships as a human-auditable text file:
//
//   table: sqcup
//   kind: target-op
//   arity: 2
//   domain: 1 0 B X
//   order: min 1 X B 0          (optional)
//   alt: 1 1 B B                (optional, '-' = unspecified)
//   cells:
//   1 1 1 1
//   ...
//   checksum: <fnv1a64 hex of the normalized lines above>
//
// The engine refuses to start when a fixture is non-total, fails its
// checksum, or disagrees with the built-in grid.

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct TableFixture {
    std::string name;
    std::string kind;
    int arity = 0;
    std::vector<std::string> domain;
    std::vector<std::string> cells;  // row-major tokens
    std::string order_line;          // verbatim annotation, may be empty
    std::string alt_line;            // verbatim annotation, may be empty
    std::string checksum_hex;
    std::string normalized_payload;
};

namespace detail {

inline std::string normalize_fixture_line(std::string_view line) {
    std::string out;
    bool in_space = true;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(c);
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> parts;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) parts.push_back(tok);
    return parts;
}

}  // namespace detail

inline TableFixture parse_table_fixture(std::string_view text) {
    TableFixture fx;
    std::vector<std::string> payload_lines;
    bool in_cells = false;
    std::istringstream is{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = detail::normalize_fixture_line(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("checksum:", 0) == 0) {
            fx.checksum_hex = detail::normalize_fixture_line(line.substr(9));
            break;  // nothing after the checksum counts
        }
        payload_lines.push_back(line);
        if (in_cells) {
            for (auto& tok : detail::split_ws(line)) fx.cells.push_back(tok);
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("table fixture: expected 'key: value'", lineno, 1);
        std::string key = line.substr(0, colon);
        std::string value = detail::normalize_fixture_line(line.substr(colon + 1));
        if (key == "table") fx.name = value;
        else if (key == "kind") fx.kind = value;
        else if (key == "arity") fx.arity = std::stoi(value);
        else if (key == "domain") fx.domain = detail::split_ws(value);
        else if (key == "order") fx.order_line = value;
        else if (key == "alt") fx.alt_line = value;
        else if (key == "cells") in_cells = true;
        else throw ParseError("table fixture: unknown key '" + key + "'", lineno, 1);
    }
    for (std::size_t i = 0; i < payload_lines.size(); ++i) {
        if (i) fx.normalized_payload.push_back('\n');
        fx.normalized_payload += payload_lines[i];
    }
    if (fx.name.empty()) throw ConfigError("table fixture: missing 'table:' line");
    if (fx.domain.empty()) throw ConfigError(fx.name + ": missing 'domain:' line");
    return fx;
}

inline std::string checksum_hex(std::string_view payload) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(payload);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline std::string table_kind_name(TableKind k) {
    switch (k) {
        case TableKind::TargetOp: return "target-op";
        case TableKind::PolicyCombinator: return "policy-combinator";
        case TableKind::Transformation: return "transformation";
        case TableKind::Finalizer: return "finalizer";
    }
    return "?";
}

inline std::string order_rule_line(const OrderRule& r) {
    std::string s = r.is_max ? "max" : "min";
    for (Outcome v : r.descending) {
        s += ' ';
        s += outcome_token(v);
    }
    return s;
}

inline std::string alt_line_of(const TableEntry& e) {
    bool any = false;
    for (const auto& c : e.alt) any = any || c.has_value();
    if (!any) return "";
    std::string s;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) s += ' ';
        s += e.alt[i] ? std::string(outcome_token(*e.alt[i])) : "-";
    }
    return s;
}

// Checks a parsed fixture against the built-in entry of the same name:
// totality, checksum, cell-for-cell equality, and annotation equality.
inline void verify_fixture_against_builtin(const TableFixture& fx) {
    const TableEntry& e = table_entry(fx.name);
    const std::size_t want_cells = e.arity == 1 ? 4u : 16u;
    if (fx.arity != e.arity)
        throw ConfigError(fx.name + ": fixture arity " + std::to_string(fx.arity) +
                          " != " + std::to_string(e.arity));
    if (fx.kind != table_kind_name(e.kind))
        throw ConfigError(fx.name + ": fixture kind '" + fx.kind + "' != '" +
                          table_kind_name(e.kind) + "'");
    if (fx.domain != std::vector<std::string>{"1", "0", "B", "X"})
        throw ConfigError(fx.name + ": unexpected domain");
    if (fx.cells.size() != want_cells)
        throw ConfigError(fx.name + ": fixture is not total: " +
                          std::to_string(fx.cells.size()) + " of " +
                          std::to_string(want_cells) + " cells");
    if (fx.checksum_hex.empty())
        throw ConfigError(fx.name + ": missing checksum");
    if (checksum_hex(fx.normalized_payload) != fx.checksum_hex)
        throw ConfigError(fx.name + ": checksum mismatch");
    for (std::size_t i = 0; i < want_cells; ++i) {
        auto v = outcome_from_token(fx.cells[i]);
        if (!v) throw ConfigError(fx.name + ": bad cell token '" + fx.cells[i] + "'");
        if (*v != e.cells[i])
            throw ConfigError(fx.name + ": cell " + std::to_string(i) +
                              " is " + fx.cells[i] + ", built-in says " +
                              std::string(outcome_token(e.cells[i])));
    }
    std::string want_order = e.order ? order_rule_line(*e.order) : "";
    if (fx.order_line != want_order)
        throw ConfigError(fx.name + ": order annotation mismatch");
    if (fx.alt_line != alt_line_of(e))
        throw ConfigError(fx.name + ": alt annotation mismatch");
}

// Canonical fixture text for a built-in table (including checksum). The
// shipped files are hand-written; this exists for audits and for tests.
inline std::string render_table_fixture(const TableEntry& e) {
    std::string s;
    s += "table: " + std::string(e.name) + "\n";
    s += "kind: " + table_kind_name(e.kind) + "\n";
    s += "arity: " + std::to_string(e.arity) + "\n";
    s += "domain: 1 0 B X\n";
    if (e.order) s += "order: " + order_rule_line(*e.order) + "\n";
    if (auto alt = alt_line_of(e); !alt.empty()) s += "alt: " + alt + "\n";
    s += "cells:\n";
    const std::size_t cols = 4;
    const std::size_t rows = e.arity == 1 ? 1u : 4u;
    std::vector<std::string> payload_lines;
    for (std::size_t r = 0; r < rows; ++r) {
        std::string row;
        for (std::size_t c = 0; c < cols; ++c) {
            if (c) row += ' ';
            row += outcome_token(e.cells[r * cols + c]);
        }
        s += row + "\n";
    }
    // recompute the checksum exactly as the parser would
    TableFixture fx = parse_table_fixture(s + "checksum: 0\n");
    s += "checksum: " + checksum_hex(fx.normalized_payload) + "\n";
    return s;
}

// Pretty 4x4 grid for the CLI `tables` command.
inline std::string format_table_grid(const TableEntry& e) {
    std::ostringstream os;
    os << e.name << " (" << table_kind_name(e.kind) << ")\n";
    const char* header = e.kind == TableKind::Transformation ? "tag" : "b";
    if (e.arity == 1) {
        os << "  x    : 1 0 B X\n";
        os << "  " << e.name << (e.name.size() < 5 ? std::string(5 - e.name.size(), ' ') : "")
           << ": ";
        for (std::size_t i = 0; i < 4; ++i)
            os << outcome_token(e.cells[i]) << (i + 1 < 4 ? " " : "\n");
        return os.str();
    }
    os << "  a\\" << header << "  1 0 B X\n";
    for (std::size_t r = 0; r < 4; ++r) {
        os << "  " << outcome_token(kAllOutcomes[r]) << "    ";
        for (std::size_t c = 0; c < 4; ++c)
            os << " " << outcome_token(e.cells[r * 4 + c]);
        os << "\n";
    }
    return os.str();
}

}  // namespace pbac
