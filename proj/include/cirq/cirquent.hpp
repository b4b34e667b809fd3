#pragma once

// Cirquents: a pool of oformulas (formula occurrences, addressed by 0-based
// index) plus a structure of ogroups (each a set of pool indices).  Groups are
// kept as sorted unique index vectors; duplicate groups in the structure are
// allowed.  Display and serialization use 1-based indices.

#include <string>
#include <vector>

#include "json.hpp"

#include "cirq/formula.hpp"

namespace cirq {

using Group = std::vector<int>;  // sorted, unique, 0-based pool indices

struct Cirquent {
    std::vector<Formula> pool;
    std::vector<Group> groups;

    friend bool operator==(const Cirquent& a, const Cirquent& b) {
        if (a.groups != b.groups) return false;
        if (a.pool.size() != b.pool.size()) return false;
        for (std::size_t i = 0; i < a.pool.size(); ++i)
            if (a.pool[i] != b.pool[i]) return false;
        return true;
    }
    friend bool operator!=(const Cirquent& a, const Cirquent& b) { return !(a == b); }
};

inline Cirquent empty_cirquent() { return {}; }

// (⟨f⟩, ⟨{0}⟩): the cirquent whose provability defines provability of f.
Cirquent formula_cirquent(const Formula& f);

// Sorted + deduplicated copy.
Group normalized_group(Group g);

// Throws std::invalid_argument on out-of-range indices, unsorted or duplicate
// members, or an invalid pool handle.
void validate(const Cirquent& c);

// Replace groups i and i+1 by their union at position i.
Cirquent merge_ogroups(const Cirquent& c, int i);
// Replace oformulas i and i+1 by h at position i; arcs to either now point to
// h, and higher indices shift down by one.
Cirquent merge_oformulas(const Cirquent& c, int i, const Formula& h);

// Sum of oformula lengths plus sum of group sizes.
int cirquent_size(const Cirquent& c);
// Total number of (group, member) arcs.
int arc_count(const Cirquent& c);
// Total positive atom occurrences over the pool.
int pool_positive_occurrences(const Cirquent& c);

// Canonicalization modulo the two exchange rules.  `ranks` assigns each pool
// position an integer with ranks[i] == ranks[j] iff pool[i] == pool[j]
// (callers pick the labeling; equal formulas must get equal ranks).  The
// returned permutations map old positions to canonical positions.
struct CanonicalPerms {
    std::vector<int> pool_perm;   // canonical position of pool index i
    std::vector<int> group_perm;  // canonical position of group index g
};
CanonicalPerms canonicalize(const Cirquent& c, const std::vector<int>& ranks);

// Rank pool formulas by rendered text (equal text iff equal formula).
std::vector<int> render_ranks(const Cirquent& c);

// Permute a cirquent into the order described by perms.
Cirquent apply_perms(const Cirquent& c, const CanonicalPerms& perms);

// Opaque key: equal iff the cirquents are inter-derivable by exchange moves
// alone.  Embeds rendered formula text, so keys are globally comparable.
std::string canonical_key(const Cirquent& c);

// Compact key for callers that maintain their own formula interning: encodes
// ranks and groups in canonical order.  Comparable only between cirquents
// ranked by the same labeler.
std::string canonical_key_with_ranks(const Cirquent& c, const std::vector<int>& ranks);

// "A, B, A, D | {1,2} {2,3} {4}"; the empty cirquent renders as " | ".
std::string render_text(const Cirquent& c);
// Bipartite digraph with group nodes pointing at oformula nodes.
std::string render_dot(const Cirquent& c);

// {"pool": ["A","B"], "groups": [[1,2]]} with 1-based indices.  Duplicate
// indices inside one input group are collapsed with a warning appended to
// *warnings (when given); out-of-range indices throw std::invalid_argument.
nlohmann::json cirquent_to_json(const Cirquent& c);
Cirquent cirquent_from_json(const nlohmann::json& j,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace cirq
