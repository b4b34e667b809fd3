#pragma once

// Proof trees: each node holds its full cirquent, the rule deriving it, and
// the child subproofs for that rule's premises.  The checker replays every
// node with `apply` and reports (rather than throws) all problems it finds.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cirq/cirquent.hpp"
#include "cirq/rules.hpp"

namespace cirq {

struct Proof {
    Cirquent cirquent;
    RuleApplication rule;
    std::vector<Proof> children;

    friend bool operator==(const Proof&, const Proof&) = default;
};

struct CheckIssue {
    std::vector<int> path;   // child indices from the root; empty means the root node
    std::string rule;        // rule tag at the offending node
    std::string diagnostic;  // RULE_NOT_IN_SYSTEM, REPLAY_MISMATCH, ARITY_MISMATCH, ...
    std::string message;
};

struct CheckReport {
    bool ok = false;
    std::vector<CheckIssue> issues;
};

// ok iff every node's rule is admitted by the system and replays bit-exact.
CheckReport check(SystemId system, const Proof& p);

struct ProofMetrics {
    int size = 0;        // sum of cirquent sizes over all nodes
    int rule_count = 0;  // node count
    std::map<std::string, int> rule_counts;
    int max_width = 0;   // largest ogroup count over all cirquents
};
ProofMetrics metrics(const Proof& p);

struct WidthReport {
    bool ok = false;
    int max_width = 0;
    int bound = 0;
    std::vector<int> offender;  // path of the first too-wide node (when !ok)
};

// Width bound for proofs of formula_cirquent(root_formula): no cirquent may
// have more ogroups than the root formula has positive atom occurrences.
WidthReport check_width_bound(const Proof& p, const Formula& root_formula);

// (a) removes Mix premises that carry no ogroups (in particular EmptyAxiom
// subtrees), re-inserting their arc-less oformulas with pool weakenings;
// (b) rewrites every maximal run of exchange applications into a minimal
// transposition sequence realizing the same net permutations.  Root cirquent
// is preserved bit-exact; rule_count never increases; output re-checks.
// Throws std::invalid_argument if the input fails check.
Proof normalize(const Proof& p);

// {"cirquent": ..., "rule": ..., "premises": [...]}
nlohmann::json proof_to_json(const Proof& p);
Proof proof_from_json(const nlohmann::json& j);

}  // namespace cirq
