#pragma once

// Backward proof search over canonical cirquent classes: exhaustive within
// the derived bounds for the duplication-free system (where it is a decision
// procedure), budgeted best-effort elsewhere, with elaboration of the found
// skeleton into a concrete checkable proof.

#include <cstdint>
#include <optional>

#include "cirq/proof.hpp"

namespace cirq {

struct SearchBudget {
    // Non-exchange rule applications available to any single branch.  0 means
    // "derive from the goal": connectives + 2*positive-occurrences + length +
    // length^3 + 64, a conservative reading of the polynomial proof-shape
    // bounds (intro rules bounded by connectives, identity axioms and mixes
    // by positive occurrences, pool weakenings by oformulas, ogroup
    // weakenings cubically).
    int max_nonexchange_rules = 0;
    // Cap on the group count of every cirquent visited.  Unset derives the
    // default: positive occurrences of the goal (the proved width bound for
    // the duplication-free system), widened by the duplication allowance
    // (once or, with contraction present, twice) elsewhere.
    std::optional<int> max_width_override;
    std::int64_t max_nodes_expanded = 4'000'000;
    // How many growth reversals (duplication, and contraction in the full
    // system) one branch may stack.  -1 derives 2*length.  Forced to 0 in
    // the duplication-free system.
    int duplication_cap = -1;
};

// The budget prove() actually runs after filling in derived defaults.
SearchBudget resolve_budget(SystemId system, const Formula& goal, SearchBudget requested = {});

enum class SearchOutcome { Proved, Refuted, BudgetExceeded };

struct SearchStats {
    std::int64_t nodes_expanded = 0;
    std::int64_t memo_hits = 0;
    double elapsed_seconds = 0.0;
};

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::BudgetExceeded;
    std::optional<Proof> proof;  // set iff Proved; passes check() for the system
    SearchStats stats;
};

// Backward search from the goal's single-formula cirquent.  Proved results
// carry an elaborated proof ending at exactly that cirquent.  Refuted is
// authoritative: it is returned only when the search space was exhausted
// with no budget cap interfering (for the two budgeted systems, a tainted
// exhaustion falls back on the semantic deciders, and only their rejection
// downgrades to Refuted).  Everything else is BudgetExceeded.
SearchResult prove(SystemId system, const Formula& goal, SearchBudget budget = {});

}  // namespace cirq
