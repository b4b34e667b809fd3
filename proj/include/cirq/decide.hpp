#pragma once

// Semantic decision procedures: classical tautology for the full calculus,
// and the binary-tautology matching characterization for the
// contraction-free system.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cirq/formula.hpp"
#include "json.hpp"

namespace cirq {

// One matched pair: a positive and a negative occurrence of the same atom.
struct MatchedPair {
    OccurrenceRef positive;
    OccurrenceRef negative;

    friend bool operator==(const MatchedPair& a, const MatchedPair& b) {
        return a.positive == b.positive && a.negative == b.negative;
    }
};

// Disjoint pos/neg occurrence pairs, keyed by atom name.  Occurrences that
// appear in no pair are unmatched.  Atoms with no pairs carry no key.
using Matching = std::map<std::string, std::vector<MatchedPair>>;

// A normal binary formula together with the atomic substitution carrying it
// back onto the goal, and the matching that produced it.
struct BinaryWitness {
    Formula beta;
    Substitution sigma;
    Matching matching;
};

struct CccResult {
    bool provable = false;
    Assignment countermodel;  // total on the goal's atoms when !provable
};

// Provable iff classically valid.
CccResult decide_ccc(const Formula& f);

// Calls fn for every matching of f, in deterministic order: per atom,
// ascending pair count, then positive-subset / negative-subset / pairing
// permutation each in lexicographic order of occurrence positions; across
// atoms odometer-style with the first atom advancing slowest.  Stops early
// when fn returns false.
void enumerate_matchings(const Formula& f, const std::function<bool(const Matching&)>& fn);

// Closed form: product over atoms of sum over m of C(p,m)*C(q,m)*m!, where
// the atom has p positive and q negative occurrences.
std::uint64_t count_matchings(const Formula& f);

// Builds the witness a matching determines: each matched pair becomes one
// fresh atom (plain at the positive site, negated at the negative site);
// every unmatched occurrence becomes its own fresh atom with its polarity
// preserved.  Fresh atoms are named x1, x2, ... by leftmost first
// appearance.  Throws std::invalid_argument when the matching references
// occurrences that do not exist in f, mismatches polarities, or reuses an
// occurrence.
BinaryWitness relabel(const Formula& f, const Matching& m);

struct Cl5Result {
    bool provable = false;
    std::optional<BinaryWitness> witness;  // set when provable
};

// Provable iff some matching relabels f into a tautology; returns the first
// witness in enumeration order.
Cl5Result decide_cl5(const Formula& f);

// Exhaustive variant for inspection and tests: visits every matching and
// counts the tautological ones instead of stopping at the first.
struct WitnessCount {
    std::uint64_t matchings = 0;
    std::uint64_t tautological = 0;
};
WitnessCount count_witnesses(const Formula& f);

// Independent re-check of a claimed witness: beta is normal binary, sigma
// maps beta exactly onto f, and beta is a tautology.
bool verify_witness(const Formula& f, const BinaryWitness& w);

nlohmann::json witness_to_json(const BinaryWitness& w);

}  // namespace cirq
