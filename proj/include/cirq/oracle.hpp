#pragma once

// Brute-force reference implementations, deliberately simple and kept apart
// from the code paths they validate: vertex cover by subset enumeration,
// exists/forall DNF truth by full table, and tautology by a plain
// truth-table loop that shares nothing with is_tautology.

#include <optional>
#include <string>
#include <vector>

#include "cirq/formula.hpp"
#include "cirq/instances.hpp"

namespace cirq {

inline constexpr int kBruteForceVcMaxVertices = 20;
inline constexpr int kBruteForceSigma2MaxVars = 20;
inline constexpr int kBruteForceTautologyMaxAtoms = 16;

// Enumerates vertex subsets smallest-first (by size, then lexicographically
// by vertex position) and returns the first cover of size <= k, as vertex
// names in declaration order, or nullopt when no such cover exists.
// Throws std::invalid_argument on invalid instances or > 20 vertices.
std::optional<std::vector<std::string>> brute_force_vc(const VCInstance& inst);

// Truth of exists X forall Y (DNF matrix) by enumerating all assignments.
// Throws std::invalid_argument on invalid instances or |X| + |Y| > 20.
bool eval_sigma2(const Sigma2Instance& inst);

// Plain truth-table check over all assignments; no propagation, no sharing.
// Throws std::invalid_argument beyond 16 distinct atoms.
bool brute_force_tautology(const Formula& f);

}  // namespace cirq
