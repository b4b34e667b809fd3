#pragma once

// Propositional formulas in negation normal form: ~ applies to atoms only,
// the only binary connectives are & and |.  Implication is accepted by the
// parser and desugared immediately (A -> B becomes ~A | B, with the negation
// pushed to the literals), so the AST never stores -> or a non-atomic ~.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cirq {

enum class FormulaKind : std::uint8_t { Atom, NegAtom, Or, And };

class Formula {
public:
    Formula() = default;  // invalid handle; every factory returns a valid one

    static Formula atom(std::string_view name);
    static Formula neg_atom(std::string_view name);
    static Formula disj(Formula left, Formula right);
    static Formula conj(Formula left, Formula right);

    FormulaKind kind() const;
    bool is_literal() const;
    const std::string& atom_name() const;
    const Formula& left() const;
    const Formula& right() const;

    std::size_t hash() const;
    explicit operator bool() const { return node_ != nullptr; }

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
    // Total structural order (kind, name, children); 0 iff equal.
    static int compare(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    FormulaKind kind;
    std::size_t hash;
    std::string name;  // literals only
    Formula lhs, rhs;  // Or/And only
};

inline FormulaKind Formula::kind() const { return node_->kind; }
inline bool Formula::is_literal() const {
    return node_->kind == FormulaKind::Atom || node_->kind == FormulaKind::NegAtom;
}
inline std::size_t Formula::hash() const { return node_->hash; }
inline const Formula& Formula::left() const { return node_->lhs; }
inline const Formula& Formula::right() const { return node_->rhs; }

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg), position(pos) {}
};

// Grammar: atoms [A-Za-z0-9_]+; prefix ~; infix &, |, -> with precedence
// ~ > & > | > ->;  & and | associate left, -> associates right.
Formula parse_formula(std::string_view text);
// Minimal parentheses; emits only ~, &, |.  parse(render(f)) == f.
std::string render_formula(const Formula& f);

// Number of literal occurrences plus number of &/| occurrences (a literal's ~
// does not count separately).
int formula_length(const Formula& f);
int connective_count(const Formula& f);
// Count of positive literal occurrences (Atom leaves).
int positive_occurrence_count(const Formula& f);

enum class Polarity : std::uint8_t { Positive, Negative };
enum class Step : std::uint8_t { Left, Right };

struct OccurrenceRef {
    std::vector<Step> path;  // root-to-leaf
    Polarity polarity;
    friend bool operator==(const OccurrenceRef& a, const OccurrenceRef& b) {
        return a.path == b.path && a.polarity == b.polarity;
    }
};

struct LiteralOccurrence {
    std::string name;
    OccurrenceRef ref;
};

// Occurrences of one atom / of all literals, in left-to-right (path) order.
std::vector<OccurrenceRef> occurrences(const Formula& f, std::string_view atom);
std::vector<LiteralOccurrence> literal_occurrences(const Formula& f);
// Distinct atom names in first-occurrence order.
std::vector<std::string> collect_atoms(const Formula& f);

using Assignment = std::map<std::string, bool>;

// Throws std::invalid_argument if an atom of f is missing from a.
bool evaluate(const Formula& f, const Assignment& a);

struct TautologyResult {
    bool tautology;
    Assignment countermodel;  // total on the atoms of f when !tautology
};

// Exhaustive truth table up to kTautologyTruthTableMaxVars distinct atoms,
// backtracking with constant folding beyond that.
inline constexpr int kTautologyTruthTableMaxVars = 20;
TautologyResult is_tautology(const Formula& f);

using Substitution = std::map<std::string, Formula>;

// Uniform substitution.  Every atom of f must be in s.  An atom with a
// non-atomic image may only occur positively (negating a compound image is
// not supported here); otherwise throws std::invalid_argument.
Formula apply_substitution(const Substitution& s, const Formula& f);

// The unique atom-to-atom substitution with apply_substitution(s, beta) == goal,
// if one exists.
std::optional<Substitution> find_atomic_instance_witness(const Formula& goal,
                                                         const Formula& beta);

// Binary: no atom occurs more than twice.  Normal binary: additionally every
// twice-occurring atom occurs once positively and once negatively.
bool is_binary(const Formula& f);
bool is_normal_binary(const Formula& f);

// De Morgan dual (syntactic negation staying inside NNF).  Involutive.
Formula nnf_negate(const Formula& f);

// Or(nnf_negate(a), b): the NNF reading of a -> b.
Formula implies_nnf(const Formula& a, const Formula& b);

}  // namespace cirq
