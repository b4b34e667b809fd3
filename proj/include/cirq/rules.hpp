#pragma once

// The rule layer: forward application of the twelve rule tags with full
// side-condition checking, per-system admission, JSON (de)serialization, and
// backward enumeration of premise candidates for proof search.

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cirq/cirquent.hpp"
#include "cirq/formula.hpp"

namespace cirq {

enum class SystemId { CCC, CL5, CL5Minus };

// "ccc", "cl5", "cl5minus" (the CLI spellings).
std::string system_name(SystemId s);
SystemId system_from_name(std::string_view name);  // throws std::invalid_argument

namespace rules {
struct EmptyAxiom {
    friend bool operator==(const EmptyAxiom&, const EmptyAxiom&) = default;
};
struct IdentityAxiom {
    Formula f;
    friend bool operator==(const IdentityAxiom&, const IdentityAxiom&) = default;
};
struct Mix {
    friend bool operator==(const Mix&, const Mix&) = default;
};
struct OformulaExchange {
    int i;  // swaps pool entries i, i+1 (arcs follow the formulas)
    friend bool operator==(const OformulaExchange&, const OformulaExchange&) = default;
};
struct OgroupExchange {
    int i;  // swaps groups i, i+1
    friend bool operator==(const OgroupExchange&, const OgroupExchange&) = default;
};
struct PoolWeakening {
    int pos;  // insertion position, 0..|pool|
    Formula f;
    friend bool operator==(const PoolWeakening&, const PoolWeakening&) = default;
};
struct OgroupWeakening {
    int g;  // group receiving one new arc
    int o;  // oformula the arc points at; must be absent from the group
    friend bool operator==(const OgroupWeakening&, const OgroupWeakening&) = default;
};
struct DuplicationDown {
    int g;  // group replaced by two adjacent copies
    friend bool operator==(const DuplicationDown&, const DuplicationDown&) = default;
};
struct DuplicationUp {
    int g;  // premise groups g, g+1 must be identical; conclusion keeps one
    friend bool operator==(const DuplicationUp&, const DuplicationUp&) = default;
};
struct Contraction {
    int i;  // pool[i] and pool[i+1] must be identical
    friend bool operator==(const Contraction&, const Contraction&) = default;
};
struct OrIntro {
    int i;  // merges pool[i], pool[i+1] into their disjunction
    friend bool operator==(const OrIntro&, const OrIntro&) = default;
};
struct AndIntro {
    int i;  // merges pool[i], pool[i+1] into their conjunction, pairing groups
    friend bool operator==(const AndIntro&, const AndIntro&) = default;
};
}  // namespace rules

using RuleApplication =
    std::variant<rules::EmptyAxiom, rules::IdentityAxiom, rules::Mix, rules::OformulaExchange,
                 rules::OgroupExchange, rules::PoolWeakening, rules::OgroupWeakening,
                 rules::DuplicationDown, rules::DuplicationUp, rules::Contraction, rules::OrIntro,
                 rules::AndIntro>;

// Tag name as used in JSON ("AndIntro", "Mix", ...).
std::string rule_name(const RuleApplication& r);
int premise_arity(const RuleApplication& r);  // 0, 1, or 2
bool rule_admitted(SystemId s, const RuleApplication& r);
bool is_exchange(const RuleApplication& r);

// Thrown by apply: `code` is a stable machine-readable diagnostic, e.g.
// ARITY_MISMATCH, INDEX_OUT_OF_RANGE, AND_INTRO_SHARED_GROUP,
// AND_INTRO_UNPAIRED_GROUP, CONTRACTION_NOT_IDENTICAL, DUP_UP_NOT_IDENTICAL,
// OGROUP_WEAKENING_ARC_EXISTS.
struct RuleError : std::runtime_error {
    std::string code;
    RuleError(std::string code_, const std::string& msg)
        : std::runtime_error(msg), code(std::move(code_)) {}
};

Cirquent apply(const RuleApplication& r, const std::vector<Cirquent>& premises);

// {"rule":"AndIntro","i":2} with 1-based indices; formulas as rendered text.
nlohmann::json rule_to_json(const RuleApplication& r);
RuleApplication rule_from_json(const nlohmann::json& j);

// One backward move: apply(rule, premises) derives the goal again, exactly
// for single-premise rules and up to exchange for Mix and the duplication
// reversal of non-adjacent duplicates.
struct ReverseCandidate {
    RuleApplication rule;
    std::vector<Cirquent> premises;
    bool grows = false;  // premise is larger than the goal (duplication/contraction reversal)
};

// Optional filter consulted while premise candidates are being assembled: a
// candidate is dropped as soon as one of its newly formed groups (given by
// member formulas) is rejected.  Groups copied unchanged from the goal are
// not re-checked.
using GroupViability = std::function<bool(const std::vector<Formula>& members)>;

// Complete modulo exchange for the rules admitted by the system; exchange
// moves themselves are never enumerated.
std::vector<ReverseCandidate> enumerate_reverse(SystemId system, const Cirquent& goal,
                                                const GroupViability& viable = {});

// Exchange applications (in premise-to-conclusion order) realizing the given
// position permutations with the minimal number of adjacent transpositions.
std::vector<RuleApplication> transposition_chain(std::vector<int> pool_perm,
                                                 std::vector<int> group_perm);

// Minimal exchange chain turning `from` into `to`; throws std::logic_error if
// they are not exchange-equivalent.
std::vector<RuleApplication> exchange_chain(const Cirquent& from, const Cirquent& to);

}  // namespace cirq
