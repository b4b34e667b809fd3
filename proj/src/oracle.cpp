#include "cirq/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>

namespace cirq {

void validate_graph(const Graph& g) {
    std::set<std::string> seen;
    for (const std::string& v : g.vertices)
        if (!seen.insert(v).second)
            throw std::invalid_argument("vertex \"" + v + "\" declared twice");
    std::set<std::pair<std::string, std::string>> edge_set;
    for (const auto& [a, b] : g.edges) {
        if (!seen.count(a) || !seen.count(b))
            throw std::invalid_argument("edge (" + a + ", " + b + ") has an undeclared endpoint");
        if (a == b) throw std::invalid_argument("self-loop at vertex \"" + a + "\"");
        if (!edge_set.insert({std::min(a, b), std::max(a, b)}).second)
            throw std::invalid_argument("duplicate edge (" + a + ", " + b + ")");
    }
}

int vertex_degree(const Graph& g, const std::string& v) {
    int degree = 0;
    for (const auto& [a, b] : g.edges)
        if (a == v || b == v) ++degree;
    return degree;
}

void validate_vc(const VCInstance& inst) {
    validate_graph(inst.graph);
    if (inst.k < 1) throw std::invalid_argument("cover budget k must be at least 1");
    if (inst.graph.edges.empty()) throw std::invalid_argument("edge set must be nonempty");
}

void validate_sigma2(const Sigma2Instance& inst) {
    std::set<std::string> declared;
    for (const std::string& x : inst.exists_vars)
        if (!declared.insert(x).second)
            throw std::invalid_argument("variable \"" + x + "\" declared twice");
    for (const std::string& y : inst.forall_vars)
        if (!declared.insert(y).second)
            throw std::invalid_argument("variable \"" + y + "\" declared twice");
    if (inst.dnf.empty())
        throw std::invalid_argument("matrix must have at least one conjunct");
    for (const auto& conjunct : inst.dnf) {
        if (conjunct.empty()) throw std::invalid_argument("empty conjunct in matrix");
        for (const DnfLiteral& lit : conjunct)
            if (!declared.count(lit.var))
                throw std::invalid_argument("matrix mentions undeclared variable \"" + lit.var +
                                            "\"");
    }
}

std::optional<std::vector<std::string>> brute_force_vc(const VCInstance& inst) {
    validate_vc(inst);
    const int n = static_cast<int>(inst.graph.vertices.size());
    if (n > kBruteForceVcMaxVertices)
        throw std::invalid_argument("instance too large: more than 20 vertices");

    std::vector<std::pair<int, int>> edges;
    auto position = [&](const std::string& name) {
        return static_cast<int>(std::find(inst.graph.vertices.begin(), inst.graph.vertices.end(),
                                          name) -
                                inst.graph.vertices.begin());
    };
    for (const auto& [a, b] : inst.graph.edges) edges.push_back({position(a), position(b)});

    auto covers = [&](std::uint32_t chosen) {
        for (const auto& [a, b] : edges)
            if (!((chosen >> a) & 1u) && !((chosen >> b) & 1u)) return false;
        return true;
    };

    // Size 0, then 1, ...; within a size, combinations in lexicographic order
    // of vertex positions.
    for (int size = 0; size <= std::min(inst.k, n); ++size) {
        std::vector<int> pick(size);
        for (int i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::uint32_t chosen = 0;
            for (int i : pick) chosen |= 1u << i;
            if (covers(chosen)) {
                std::vector<std::string> names;
                for (int i : pick) names.push_back(inst.graph.vertices[i]);
                return names;
            }
            // Advance to the next combination, or stop.
            int j = size - 1;
            while (j >= 0 && pick[j] == n - size + j) --j;
            if (j < 0) break;
            ++pick[j];
            for (int t = j + 1; t < size; ++t) pick[t] = pick[t - 1] + 1;
        }
    }
    return std::nullopt;
}

bool eval_sigma2(const Sigma2Instance& inst) {
    validate_sigma2(inst);
    const int nx = static_cast<int>(inst.exists_vars.size());
    const int ny = static_cast<int>(inst.forall_vars.size());
    if (nx + ny > kBruteForceSigma2MaxVars)
        throw std::invalid_argument("instance too large: more than 20 variables");

    // bit index: exists variables first, then forall variables.
    auto bit_of = [&](const std::string& var) {
        auto x = std::find(inst.exists_vars.begin(), inst.exists_vars.end(), var);
        if (x != inst.exists_vars.end())
            return static_cast<int>(x - inst.exists_vars.begin());
        auto y = std::find(inst.forall_vars.begin(), inst.forall_vars.end(), var);
        return nx + static_cast<int>(y - inst.forall_vars.begin());
    };

    auto matrix_true = [&](std::uint32_t assignment) {
        for (const auto& conjunct : inst.dnf) {
            bool all = true;
            for (const DnfLiteral& lit : conjunct) {
                bool value = (assignment >> bit_of(lit.var)) & 1u;
                if (lit.negated) value = !value;
                if (!value) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
        return false;
    };

    for (std::uint32_t xs = 0; xs < (1u << nx); ++xs) {
        bool holds_for_all = true;
        for (std::uint32_t ys = 0; ys < (1u << ny); ++ys) {
            if (!matrix_true(xs | (ys << nx))) {
                holds_for_all = false;
                break;
            }
        }
        if (holds_for_all) return true;
    }
    return false;
}

bool brute_force_tautology(const Formula& f) {
    // Collect atom names with a private walk (left-to-right first sighting).
    std::vector<std::string> atoms;
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
        if (g.is_literal()) {
            if (std::find(atoms.begin(), atoms.end(), g.atom_name()) == atoms.end())
                atoms.push_back(g.atom_name());
        } else {
            scan(g.left());
            scan(g.right());
        }
    };
    scan(f);
    if (static_cast<int>(atoms.size()) > kBruteForceTautologyMaxAtoms)
        throw std::invalid_argument("too many atoms: more than 16 distinct names");

    std::function<bool(const Formula&, std::uint32_t)> eval = [&](const Formula& g,
                                                                  std::uint32_t mask) -> bool {
        switch (g.kind()) {
            case FormulaKind::Atom:
            case FormulaKind::NegAtom: {
                auto at = std::find(atoms.begin(), atoms.end(), g.atom_name());
                bool value = (mask >> (at - atoms.begin())) & 1u;
                return g.kind() == FormulaKind::Atom ? value : !value;
            }
            case FormulaKind::Or:
                return eval(g.left(), mask) || eval(g.right(), mask);
            case FormulaKind::And:
                return eval(g.left(), mask) && eval(g.right(), mask);
        }
        return false;  // unreachable
    };

    for (std::uint32_t mask = 0; mask < (1u << atoms.size()); ++mask)
        if (!eval(f, mask)) return false;
    return true;
}

}  // namespace cirq
