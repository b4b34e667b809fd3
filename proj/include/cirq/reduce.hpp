#pragma once

// Hardness-reduction generators: vertex cover instances map to formulas whose
// duplication-free provability matches cover existence, and exists/forall DNF
// instances map to formulas whose full-system provability matches truth.
// Both follow fixed displayed constructions; outputs carry JSON metadata
// (fresh-name tables, occurrence maps, deviation notes) for auditability.

#include <string>

#include "cirq/formula.hpp"
#include "cirq/instances.hpp"
#include "json.hpp"

namespace cirq {

// Parses an edge-list description: one line `v1 v2` per edge, plus an
// optional `vertices: a b c` header naming (and ordering) the vertex set.
// Without a header, vertices are collected in first-appearance order.
// Blank lines and `#` comments are ignored.  Throws std::invalid_argument on
// malformed lines, bad names, or graph-invariant violations.
Graph parse_graph_text(const std::string& text);

// Parses three lines: `exists x1 x2`, `forall y1`, and
// `dnf x1 & ~y1 | ~x1 & y1`.  The dnf grammar admits only literals joined by
// `&` within a conjunct and conjuncts joined by `|`, so the matrix is in
// disjunctive normal form by construction.  `exists`/`forall` may list no
// variables.  Throws std::invalid_argument on malformed input or
// instance-invariant violations.
Sigma2Instance parse_sigma2_text(const std::string& text);

struct ReductionOutput {
    Formula formula;
    nlohmann::json metadata;
};

// Builds q-repetitions ∨ (per-vertex guard disjuncts) ∨ (per-edge conjuncts):
//   psi   = q ∨ … ∨ q                   (k literals)
//   theta = (¬q ∧ (¬v ∨ … deg(v) …)) ∨ …  (one disjunct per vertex, in
//           declaration order; degree-0 vertices are dropped — their inner
//           disjunction would be empty — and noted in the metadata)
//   omega = (a₁∨b₁) ∧ … ∧ (aₘ∨bₘ)        (edges in declaration order)
// All chains and the top-level three-part disjunction associate to the
// right.  Throws std::invalid_argument when a vertex is named `q` or the
// instance invariants fail (k ≥ 1, at least one edge).
ReductionOutput reduce_vertex_cover(const VCInstance& inst);

// The formula alone.
Formula vc_to_cl5minus(const VCInstance& inst);

// Step 1: for each exists-variable z with kz positive / tz negative matrix
// occurrences, g(z) = Z_z ∧ (Z_z → u_z_1 ∧ … ∧ u_z_kz) ∧ (Z_z → ¬v_z_1 ∧ …
// ∧ ¬v_z_tz), omitting an implication conjunct whose count is zero; the
// matrix occurrences of z are replaced left-to-right by the matching u/v
// literal, and the whole formula becomes (g(z₁) ∧ … ∧ g(z_l)) → matrix'
// (just matrix' when there are no exists-variables).  Step 2: the i-th
// positive occurrence of a forall-variable y becomes P_y_i_1 ∨ … ∨ P_y_i_s
// and the j-th negative occurrence ¬P_y_1_j ∨ … ∨ ¬P_y_r_j, where r/s count
// y's positive/negative occurrences; an occurrence with no opposite-polarity
// partner becomes one fresh singleton atom (P_y_i_0 / P_y_0_j), noted in the
// metadata.  Implications and negations are expanded to negation normal form
// immediately; chains associate to the right.  Throws std::invalid_argument
// when an instance variable collides with a generated fresh name.
ReductionOutput reduce_sigma2(const Sigma2Instance& inst);

// The formula alone.
Formula tqbf_to_cl5(const Sigma2Instance& inst);

}  // namespace cirq
