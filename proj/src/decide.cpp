#include "cirq/decide.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cirq {

namespace {

struct AtomOccurrences {
    std::string name;
    std::vector<OccurrenceRef> pos;
    std::vector<OccurrenceRef> neg;
};

std::vector<AtomOccurrences> occurrence_table(const Formula& f) {
    std::vector<AtomOccurrences> table;
    for (const std::string& atom : collect_atoms(f)) {
        AtomOccurrences entry{atom, {}, {}};
        for (OccurrenceRef& ref : occurrences(f, atom))
            (ref.polarity == Polarity::Positive ? entry.pos : entry.neg)
                .push_back(std::move(ref));
        table.push_back(std::move(entry));
    }
    return table;
}

// Advances c to the next size-|c| combination out of {0..n-1}; false at the end.
bool next_combination(std::vector<int>& c, int n) {
    int size = static_cast<int>(c.size());
    int j = size - 1;
    while (j >= 0 && c[j] == n - size + j) --j;
    if (j < 0) return false;
    ++c[j];
    for (int t = j + 1; t < size; ++t) c[t] = c[t - 1] + 1;
    return true;
}

std::string path_string(const std::vector<Step>& path) {
    std::string s;
    for (Step st : path) s += (st == Step::Left ? 'L' : 'R');
    return s;
}

}  // namespace

CccResult decide_ccc(const Formula& f) {
    TautologyResult r = is_tautology(f);
    return {r.tautology, std::move(r.countermodel)};
}

void enumerate_matchings(const Formula& f, const std::function<bool(const Matching&)>& fn) {
    const std::vector<AtomOccurrences> table = occurrence_table(f);
    Matching current;
    bool stop = false;

    std::function<void(std::size_t)> per_atom = [&](std::size_t ai) {
        if (stop) return;
        if (ai == table.size()) {
            if (!fn(current)) stop = true;
            return;
        }
        const AtomOccurrences& entry = table[ai];
        const int p = static_cast<int>(entry.pos.size());
        const int q = static_cast<int>(entry.neg.size());
        for (int m = 0; m <= std::min(p, q) && !stop; ++m) {
            if (m == 0) {
                per_atom(ai + 1);  // this atom contributes no pairs
                continue;
            }
            std::vector<int> pos_pick(m);
            std::iota(pos_pick.begin(), pos_pick.end(), 0);
            do {
                std::vector<int> neg_pick(m);
                std::iota(neg_pick.begin(), neg_pick.end(), 0);
                do {
                    std::vector<int> perm(m);
                    std::iota(perm.begin(), perm.end(), 0);
                    do {
                        std::vector<MatchedPair> pairs;
                        pairs.reserve(m);
                        for (int i = 0; i < m; ++i)
                            pairs.push_back(
                                {entry.pos[pos_pick[i]], entry.neg[neg_pick[perm[i]]]});
                        current[entry.name] = std::move(pairs);
                        per_atom(ai + 1);
                        if (stop) break;
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    current.erase(entry.name);
                    if (stop) break;
                } while (next_combination(neg_pick, q));
                if (stop) break;
            } while (next_combination(pos_pick, p));
        }
    };
    per_atom(0);
}

std::uint64_t count_matchings(const Formula& f) {
    std::uint64_t total = 1;
    for (const AtomOccurrences& entry : occurrence_table(f)) {
        const std::uint64_t p = entry.pos.size(), q = entry.neg.size();
        std::uint64_t atom_count = 0;
        for (std::uint64_t m = 0; m <= std::min(p, q); ++m) {
            // C(p,m) * C(q,m) * m!
            std::uint64_t ways = 1;
            for (std::uint64_t i = 0; i < m; ++i)
                ways = ways * (p - i) / (i + 1);  // exact: partial binomials are integers
            for (std::uint64_t i = 0; i < m; ++i) ways = ways * (q - i) / (i + 1);
            for (std::uint64_t i = 2; i <= m; ++i) ways *= i;
            atom_count += ways;
        }
        total *= atom_count;
    }
    return total;
}

namespace {

// Maps every literal occurrence (by root-to-leaf path) to its index in
// left-to-right order, and validates matching references against it.
struct LiteralIndex {
    std::vector<LiteralOccurrence> literals;
    std::map<std::vector<Step>, int> by_path;

    explicit LiteralIndex(const Formula& f) : literals(literal_occurrences(f)) {
        for (int i = 0; i < static_cast<int>(literals.size()); ++i)
            by_path[literals[i].ref.path] = i;
    }

    // Index of the occurrence, after checking atom name and polarity.
    int resolve(const std::string& atom, const OccurrenceRef& ref, Polarity expected) const {
        auto it = by_path.find(ref.path);
        if (it == by_path.end())
            throw std::invalid_argument("matching references a nonexistent occurrence");
        const LiteralOccurrence& lit = literals[it->second];
        if (lit.name != atom)
            throw std::invalid_argument("matching pairs an occurrence under the wrong atom \"" +
                                        atom + "\"");
        if (lit.ref.polarity != expected || ref.polarity != expected)
            throw std::invalid_argument("matching pair has an occurrence of the wrong polarity");
        return it->second;
    }
};

// pair_id per literal index: >= 0 when matched (shared by both endpoints),
// -1 when unmatched.  Throws when an occurrence is reused.
std::vector<int> assign_pair_ids(const LiteralIndex& index, const Matching& m) {
    std::vector<int> pair_id(index.literals.size(), -1);
    int next = 0;
    for (const auto& [atom, pairs] : m) {
        for (const MatchedPair& pr : pairs) {
            int a = index.resolve(atom, pr.positive, Polarity::Positive);
            int b = index.resolve(atom, pr.negative, Polarity::Negative);
            if (pair_id[a] != -1 || pair_id[b] != -1)
                throw std::invalid_argument("matching reuses an occurrence in two pairs");
            pair_id[a] = pair_id[b] = next++;
        }
    }
    return pair_id;
}

}  // namespace

BinaryWitness relabel(const Formula& f, const Matching& m) {
    const LiteralIndex index(f);
    const std::vector<int> pair_id = assign_pair_ids(index, m);

    // Fresh names in leftmost-first-appearance order: the two endpoints of a
    // pair share the name minted when the earlier endpoint is reached.
    std::vector<std::string> fresh(index.literals.size());
    std::map<int, std::string> pair_name;
    int minted = 0;
    for (std::size_t i = 0; i < index.literals.size(); ++i) {
        int id = pair_id[i];
        if (id >= 0) {
            auto it = pair_name.find(id);
            if (it == pair_name.end())
                it = pair_name.emplace(id, "x" + std::to_string(++minted)).first;
            fresh[i] = it->second;
        } else {
            fresh[i] = "x" + std::to_string(++minted);
        }
    }

    BinaryWitness witness{f, {}, m};
    int cursor = 0;
    std::function<Formula(const Formula&)> build = [&](const Formula& g) -> Formula {
        switch (g.kind()) {
            case FormulaKind::Atom:
                return Formula::atom(fresh[cursor++]);
            case FormulaKind::NegAtom:
                return Formula::neg_atom(fresh[cursor++]);
            case FormulaKind::Or: {
                Formula l = build(g.left()), r = build(g.right());
                return Formula::disj(l, r);
            }
            case FormulaKind::And: {
                Formula l = build(g.left()), r = build(g.right());
                return Formula::conj(l, r);
            }
        }
        throw std::logic_error("unreachable");
    };
    witness.beta = build(f);
    for (std::size_t i = 0; i < index.literals.size(); ++i)
        witness.sigma.emplace(fresh[i], Formula::atom(index.literals[i].name));
    return witness;
}

namespace {

// Tautology status of a matching's relabeling, without building the full
// witness.  An atom occurring once in the relabeled formula can be set so
// its literal is false, and every NNF context is monotone, so the relabeling
// is a tautology iff the formula with all unmatched occurrences replaced by
// "false" (and constants folded away) is.  Matched pairs survive as one
// fresh atom each; the residue has one variable per pair.
bool matching_is_tautological(const Formula& f, const std::vector<int>& pair_id) {
    int cursor = 0;
    std::function<std::optional<Formula>(const Formula&)> build =
        [&](const Formula& g) -> std::optional<Formula> {
        switch (g.kind()) {
            case FormulaKind::Atom:
            case FormulaKind::NegAtom: {
                int id = pair_id[cursor++];
                if (id < 0) return std::nullopt;  // unmatched: folds to false
                std::string name = "m" + std::to_string(id);
                return g.kind() == FormulaKind::Atom ? Formula::atom(name)
                                                     : Formula::neg_atom(name);
            }
            case FormulaKind::Or: {
                auto l = build(g.left());
                auto r = build(g.right());  // always recurse: the cursor must advance
                if (!l) return r;
                if (!r) return l;
                return Formula::disj(*l, *r);
            }
            case FormulaKind::And: {
                auto l = build(g.left());
                auto r = build(g.right());
                if (!l || !r) return std::nullopt;
                return Formula::conj(*l, *r);
            }
        }
        throw std::logic_error("unreachable");
    };
    std::optional<Formula> folded = build(f);
    return folded && is_tautology(*folded).tautology;
}

}  // namespace

Cl5Result decide_cl5(const Formula& f) {
    const LiteralIndex index(f);
    Cl5Result result;
    enumerate_matchings(f, [&](const Matching& m) {
        if (matching_is_tautological(f, assign_pair_ids(index, m))) {
            result.provable = true;
            result.witness = relabel(f, m);
            return false;
        }
        return true;
    });
    return result;
}

WitnessCount count_witnesses(const Formula& f) {
    const LiteralIndex index(f);
    WitnessCount count;
    enumerate_matchings(f, [&](const Matching& m) {
        ++count.matchings;
        if (matching_is_tautological(f, assign_pair_ids(index, m))) ++count.tautological;
        return true;
    });
    return count;
}

bool verify_witness(const Formula& f, const BinaryWitness& w) {
    if (!is_normal_binary(w.beta)) return false;
    try {
        if (apply_substitution(w.sigma, w.beta) != f) return false;
    } catch (const std::invalid_argument&) {
        return false;
    }
    return is_tautology(w.beta).tautology;
}

nlohmann::json witness_to_json(const BinaryWitness& w) {
    nlohmann::json sigma = nlohmann::json::object();
    for (const auto& [name, image] : w.sigma) sigma[name] = render_formula(image);
    nlohmann::json matching = nlohmann::json::object();
    for (const auto& [atom, pairs] : w.matching) {
        nlohmann::json list = nlohmann::json::array();
        for (const MatchedPair& pr : pairs)
            list.push_back({{"positive", path_string(pr.positive.path)},
                            {"negative", path_string(pr.negative.path)}});
        matching[atom] = std::move(list);
    }
    return {{"beta", render_formula(w.beta)},
            {"sigma", std::move(sigma)},
            {"matching", std::move(matching)}};
}

}  // namespace cirq
