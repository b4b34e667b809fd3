#include "cirq/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace cirq {

namespace {

std::size_t combine_hash(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

Formula Formula::atom(std::string_view name) {
    if (name.empty() || !std::all_of(name.begin(), name.end(), is_name_char))
        throw std::invalid_argument("bad atom name: '" + std::string(name) + "'");
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Atom;
    n->name = std::string(name);
    n->hash = combine_hash(1, std::hash<std::string>{}(n->name));
    return Formula(std::move(n));
}

Formula Formula::neg_atom(std::string_view name) {
    Formula f = atom(name);
    auto n = std::make_shared<Node>(*f.node_);
    n->kind = FormulaKind::NegAtom;
    n->hash = combine_hash(2, std::hash<std::string>{}(n->name));
    return Formula(std::move(n));
}

Formula Formula::disj(Formula left, Formula right) {
    assert(left && right);
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Or;
    n->hash = combine_hash(combine_hash(3, left.hash()), right.hash());
    n->lhs = std::move(left);
    n->rhs = std::move(right);
    return Formula(std::move(n));
}

Formula Formula::conj(Formula left, Formula right) {
    assert(left && right);
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::And;
    n->hash = combine_hash(combine_hash(4, left.hash()), right.hash());
    n->lhs = std::move(left);
    n->rhs = std::move(right);
    return Formula(std::move(n));
}

const std::string& Formula::atom_name() const {
    assert(is_literal());
    return node_->name;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
    if (a.is_literal()) return a.atom_name() == b.atom_name();
    return a.left() == b.left() && a.right() == b.right();
}

int Formula::compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind())
        return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    if (a.is_literal()) return a.atom_name().compare(b.atom_name());
    if (int c = compare(a.left(), b.left())) return c;
    return compare(a.right(), b.right());
}

// ---------------------------------------------------------------------------
// Parsing.  A small pre-NNF tree keeps ~ and -> until the final conversion.

namespace {

struct Raw {
    enum Kind { RAtom, RNot, RAnd, ROr, RImp } kind;
    std::string name;
    std::unique_ptr<Raw> a, b;
};

using RawPtr = std::unique_ptr<Raw>;

RawPtr raw_node(Raw::Kind k, RawPtr a, RawPtr b = nullptr) {
    auto r = std::make_unique<Raw>();
    r->kind = k;
    r->a = std::move(a);
    r->b = std::move(b);
    return r;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    RawPtr run() {
        RawPtr f = parse_implies();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return f;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat_arrow() {
        skip_ws();
        if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
            pos_ += 2;
            return true;
        }
        return false;
    }

    RawPtr parse_implies() {
        RawPtr lhs = parse_or();
        if (eat_arrow()) return raw_node(Raw::RImp, std::move(lhs), parse_implies());
        return lhs;
    }

    RawPtr parse_or() {
        RawPtr lhs = parse_and();
        while (eat('|')) lhs = raw_node(Raw::ROr, std::move(lhs), parse_and());
        return lhs;
    }

    RawPtr parse_and() {
        RawPtr lhs = parse_unary();
        while (eat('&')) lhs = raw_node(Raw::RAnd, std::move(lhs), parse_unary());
        return lhs;
    }

    RawPtr parse_unary() {
        if (eat('~')) return raw_node(Raw::RNot, parse_unary());
        if (eat('(')) {
            RawPtr f = parse_implies();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        if (pos_ == start) fail("expected an atom, '~' or '('");
        auto r = std::make_unique<Raw>();
        r->kind = Raw::RAtom;
        r->name = std::string(text_.substr(start, pos_ - start));
        return r;
    }
};

Formula to_nnf(const Raw& r, bool positive) {
    switch (r.kind) {
        case Raw::RAtom:
            return positive ? Formula::atom(r.name) : Formula::neg_atom(r.name);
        case Raw::RNot:
            return to_nnf(*r.a, !positive);
        case Raw::RAnd:
            return positive ? Formula::conj(to_nnf(*r.a, true), to_nnf(*r.b, true))
                            : Formula::disj(to_nnf(*r.a, false), to_nnf(*r.b, false));
        case Raw::ROr:
            return positive ? Formula::disj(to_nnf(*r.a, true), to_nnf(*r.b, true))
                            : Formula::conj(to_nnf(*r.a, false), to_nnf(*r.b, false));
        case Raw::RImp:
            return positive ? Formula::disj(to_nnf(*r.a, false), to_nnf(*r.b, true))
                            : Formula::conj(to_nnf(*r.a, true), to_nnf(*r.b, false));
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Formula parse_formula(std::string_view text) {
    return to_nnf(*Parser(text).run(), true);
}

namespace {

// Or binds looser than And; literals are atomic.
int precedence(FormulaKind k) {
    switch (k) {
        case FormulaKind::Or: return 1;
        case FormulaKind::And: return 2;
        default: return 3;
    }
}

void render_rec(const Formula& f, std::string& out, int parent_prec, bool right_child) {
    if (f.kind() == FormulaKind::NegAtom) out += '~';
    if (f.is_literal()) {
        out += f.atom_name();
        return;
    }
    int prec = precedence(f.kind());
    // Same-precedence right nesting needs parentheses to survive the
    // left-associative parse.
    bool paren = prec < parent_prec || (prec == parent_prec && right_child);
    if (paren) out += '(';
    render_rec(f.left(), out, prec, false);
    out += f.kind() == FormulaKind::Or ? '|' : '&';
    render_rec(f.right(), out, prec, true);
    if (paren) out += ')';
}

}  // namespace

std::string render_formula(const Formula& f) {
    std::string out;
    render_rec(f, out, 0, false);
    return out;
}

int formula_length(const Formula& f) {
    if (f.is_literal()) return 1;
    return 1 + formula_length(f.left()) + formula_length(f.right());
}

int connective_count(const Formula& f) {
    if (f.is_literal()) return 0;
    return 1 + connective_count(f.left()) + connective_count(f.right());
}

int positive_occurrence_count(const Formula& f) {
    if (f.is_literal()) return f.kind() == FormulaKind::Atom ? 1 : 0;
    return positive_occurrence_count(f.left()) + positive_occurrence_count(f.right());
}

namespace {

template <class Fn>
void walk_literals(const Formula& f, std::vector<Step>& path, Fn&& fn) {
    if (f.is_literal()) {
        fn(f, path);
        return;
    }
    path.push_back(Step::Left);
    walk_literals(f.left(), path, fn);
    path.back() = Step::Right;
    walk_literals(f.right(), path, fn);
    path.pop_back();
}

}  // namespace

std::vector<OccurrenceRef> occurrences(const Formula& f, std::string_view atom) {
    std::vector<OccurrenceRef> out;
    std::vector<Step> path;
    walk_literals(f, path, [&](const Formula& lit, const std::vector<Step>& p) {
        if (lit.atom_name() == atom)
            out.push_back({p, lit.kind() == FormulaKind::Atom ? Polarity::Positive
                                                              : Polarity::Negative});
    });
    return out;
}

std::vector<LiteralOccurrence> literal_occurrences(const Formula& f) {
    std::vector<LiteralOccurrence> out;
    std::vector<Step> path;
    walk_literals(f, path, [&](const Formula& lit, const std::vector<Step>& p) {
        out.push_back({lit.atom_name(),
                       {p, lit.kind() == FormulaKind::Atom ? Polarity::Positive
                                                           : Polarity::Negative}});
    });
    return out;
}

std::vector<std::string> collect_atoms(const Formula& f) {
    std::vector<std::string> out;
    std::vector<Step> path;
    walk_literals(f, path, [&](const Formula& lit, const std::vector<Step>&) {
        if (std::find(out.begin(), out.end(), lit.atom_name()) == out.end())
            out.push_back(lit.atom_name());
    });
    return out;
}

bool evaluate(const Formula& f, const Assignment& a) {
    switch (f.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::NegAtom: {
            auto it = a.find(f.atom_name());
            if (it == a.end())
                throw std::invalid_argument("assignment missing atom '" + f.atom_name() + "'");
            return f.kind() == FormulaKind::Atom ? it->second : !it->second;
        }
        case FormulaKind::Or:
            return evaluate(f.left(), a) || evaluate(f.right(), a);
        case FormulaKind::And:
            return evaluate(f.left(), a) && evaluate(f.right(), a);
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Tautology checking.

namespace {

// Flat postfix program evaluated over a bitmask assignment; fast path for the
// truth-table sweep.
struct Compiled {
    // op: 0 = push var, 1 = push !var, 2 = or, 3 = and
    struct Ins {
        std::uint8_t op;
        std::uint32_t var;
    };
    std::vector<Ins> code;
    std::vector<std::string> atoms;

    explicit Compiled(const Formula& f) {
        compile(f);
    }

    void compile(const Formula& f) {
        if (f.is_literal()) {
            std::uint32_t idx = 0;
            for (; idx < atoms.size(); ++idx)
                if (atoms[idx] == f.atom_name()) break;
            if (idx == atoms.size()) atoms.push_back(f.atom_name());
            code.push_back({static_cast<std::uint8_t>(f.kind() == FormulaKind::Atom ? 0 : 1), idx});
            return;
        }
        compile(f.left());
        compile(f.right());
        code.push_back({static_cast<std::uint8_t>(f.kind() == FormulaKind::Or ? 2 : 3), 0});
    }

    bool eval(std::uint32_t mask, bool* stack) const {
        int sp = 0;
        for (const Ins& ins : code) {
            switch (ins.op) {
                case 0: stack[sp++] = (mask >> ins.var) & 1; break;
                case 1: stack[sp++] = !((mask >> ins.var) & 1); break;
                case 2: --sp; stack[sp - 1] = stack[sp - 1] || stack[sp]; break;
                default: --sp; stack[sp - 1] = stack[sp - 1] && stack[sp]; break;
            }
        }
        return stack[0];
    }
};

enum class Tri { False, True, Unknown };

Tri eval_partial(const Formula& f, const Assignment& partial) {
    switch (f.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::NegAtom: {
            auto it = partial.find(f.atom_name());
            if (it == partial.end()) return Tri::Unknown;
            bool v = f.kind() == FormulaKind::Atom ? it->second : !it->second;
            return v ? Tri::True : Tri::False;
        }
        case FormulaKind::Or: {
            Tri l = eval_partial(f.left(), partial);
            if (l == Tri::True) return Tri::True;
            Tri r = eval_partial(f.right(), partial);
            if (r == Tri::True) return Tri::True;
            return (l == Tri::False && r == Tri::False) ? Tri::False : Tri::Unknown;
        }
        case FormulaKind::And: {
            Tri l = eval_partial(f.left(), partial);
            if (l == Tri::False) return Tri::False;
            Tri r = eval_partial(f.right(), partial);
            if (r == Tri::False) return Tri::False;
            return (l == Tri::True && r == Tri::True) ? Tri::True : Tri::Unknown;
        }
    }
    throw std::logic_error("unreachable");
}

// First atom still undetermined under the partial assignment.
const std::string* pick_branch_atom(const Formula& f, const Assignment& partial) {
    if (f.is_literal())
        return partial.count(f.atom_name()) ? nullptr : &f.atom_name();
    if (const std::string* a = pick_branch_atom(f.left(), partial)) return a;
    return pick_branch_atom(f.right(), partial);
}

// Searches for a falsifying extension; fills `counter` on success.
bool find_countermodel(const Formula& f, Assignment& partial) {
    Tri t = eval_partial(f, partial);
    if (t == Tri::False) return true;
    if (t == Tri::True) return false;
    const std::string* atom = pick_branch_atom(f, partial);
    assert(atom);
    for (bool v : {false, true}) {
        partial[*atom] = v;
        if (find_countermodel(f, partial)) return true;
        partial.erase(*atom);
    }
    return false;
}

}  // namespace

TautologyResult is_tautology(const Formula& f) {
    Compiled c(f);
    std::size_t n = c.atoms.size();
    if (n <= static_cast<std::size_t>(kTautologyTruthTableMaxVars)) {
        bool small[64];
        std::unique_ptr<bool[]> big;
        bool* sp = small;
        if (c.code.size() > 64) {
            big = std::make_unique<bool[]>(c.code.size());
            sp = big.get();
        }
        std::uint64_t total = 1ull << n;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            if (!c.eval(static_cast<std::uint32_t>(mask), sp)) {
                Assignment counter;
                for (std::size_t i = 0; i < n; ++i) counter[c.atoms[i]] = (mask >> i) & 1;
                return {false, std::move(counter)};
            }
        }
        return {true, {}};
    }
    Assignment partial;
    if (find_countermodel(f, partial)) {
        for (const std::string& a : c.atoms)
            partial.emplace(a, false);  // complete the partial model
        return {false, std::move(partial)};
    }
    return {true, {}};
}

// ---------------------------------------------------------------------------

Formula apply_substitution(const Substitution& s, const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Atom:
        case FormulaKind::NegAtom: {
            auto it = s.find(f.atom_name());
            if (it == s.end())
                throw std::invalid_argument("substitution missing atom '" + f.atom_name() + "'");
            if (f.kind() == FormulaKind::Atom) return it->second;
            if (!it->second.is_literal() || it->second.kind() != FormulaKind::Atom)
                throw std::invalid_argument(
                    "atom '" + f.atom_name() +
                    "' occurs negatively but maps to a non-atomic formula");
            return Formula::neg_atom(it->second.atom_name());
        }
        case FormulaKind::Or:
            return Formula::disj(apply_substitution(s, f.left()),
                                 apply_substitution(s, f.right()));
        case FormulaKind::And:
            return Formula::conj(apply_substitution(s, f.left()),
                                 apply_substitution(s, f.right()));
    }
    throw std::logic_error("unreachable");
}

namespace {

bool match_atomic(const Formula& goal, const Formula& beta, Substitution& s) {
    if (beta.is_literal()) {
        if (!goal.is_literal() || goal.kind() != beta.kind()) return false;
        auto [it, inserted] = s.emplace(beta.atom_name(), Formula::atom(goal.atom_name()));
        return inserted || it->second.atom_name() == goal.atom_name();
    }
    if (goal.kind() != beta.kind()) return false;
    return match_atomic(goal.left(), beta.left(), s) &&
           match_atomic(goal.right(), beta.right(), s);
}

}  // namespace

std::optional<Substitution> find_atomic_instance_witness(const Formula& goal,
                                                         const Formula& beta) {
    Substitution s;
    if (match_atomic(goal, beta, s)) return s;
    return std::nullopt;
}

namespace {

void occurrence_tally(const Formula& f, std::map<std::string, std::pair<int, int>>& tally) {
    if (f.is_literal()) {
        auto& [pos, neg] = tally[f.atom_name()];
        (f.kind() == FormulaKind::Atom ? pos : neg) += 1;
        return;
    }
    occurrence_tally(f.left(), tally);
    occurrence_tally(f.right(), tally);
}

}  // namespace

bool is_binary(const Formula& f) {
    std::map<std::string, std::pair<int, int>> tally;
    occurrence_tally(f, tally);
    for (const auto& [name, pn] : tally)
        if (pn.first + pn.second > 2) return false;
    return true;
}

bool is_normal_binary(const Formula& f) {
    std::map<std::string, std::pair<int, int>> tally;
    occurrence_tally(f, tally);
    for (const auto& [name, pn] : tally) {
        int total = pn.first + pn.second;
        if (total > 2) return false;
        if (total == 2 && (pn.first != 1 || pn.second != 1)) return false;
    }
    return true;
}

Formula nnf_negate(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Atom: return Formula::neg_atom(f.atom_name());
        case FormulaKind::NegAtom: return Formula::atom(f.atom_name());
        case FormulaKind::Or: return Formula::conj(nnf_negate(f.left()), nnf_negate(f.right()));
        case FormulaKind::And: return Formula::disj(nnf_negate(f.left()), nnf_negate(f.right()));
    }
    throw std::logic_error("unreachable");
}

Formula implies_nnf(const Formula& a, const Formula& b) {
    return Formula::disj(nnf_negate(a), b);
}

}  // namespace cirq
