#include "cirq/reduce.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cirq {

namespace {

using nlohmann::json;

bool valid_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::string trimmed(std::string s) {
    auto issp = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
    while (!s.empty() && issp(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && issp(s[i])) ++i;
    return s.substr(i);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Meaningful lines: comments (from '#') stripped, blanks dropped.
std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trimmed(line);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

// Right-associated chains, matching the displayed constructions.
Formula join_or(const std::vector<Formula>& parts) {
    if (parts.empty()) throw std::logic_error("join_or: empty chain");
    Formula acc = parts.back();
    for (auto it = std::next(parts.rbegin()); it != parts.rend(); ++it)
        acc = Formula::disj(*it, std::move(acc));
    return acc;
}

Formula join_and(const std::vector<Formula>& parts) {
    if (parts.empty()) throw std::logic_error("join_and: empty chain");
    Formula acc = parts.back();
    for (auto it = std::next(parts.rbegin()); it != parts.rend(); ++it)
        acc = Formula::conj(*it, std::move(acc));
    return acc;
}

}  // namespace

Graph parse_graph_text(const std::string& text) {
    Graph g;
    bool have_header = false;
    std::set<std::string> seen;
    auto add_inferred = [&](const std::string& v) {
        if (seen.insert(v).second) g.vertices.push_back(v);
    };
    for (const std::string& line : content_lines(text)) {
        if (line.rfind("vertices:", 0) == 0) {
            if (have_header)
                throw std::invalid_argument("graph text: duplicate vertices header");
            if (!g.edges.empty())
                throw std::invalid_argument("graph text: vertices header must precede edges");
            have_header = true;
            for (const std::string& v : split_ws(line.substr(9))) {
                if (!valid_name(v))
                    throw std::invalid_argument("graph text: bad vertex name '" + v + "'");
                g.vertices.push_back(v);
            }
            continue;
        }
        std::vector<std::string> tok = split_ws(line);
        if (tok.size() != 2)
            throw std::invalid_argument("graph text: expected an edge line 'v1 v2', got '" +
                                        line + "'");
        for (const std::string& v : tok)
            if (!valid_name(v))
                throw std::invalid_argument("graph text: bad vertex name '" + v + "'");
        if (!have_header) {
            add_inferred(tok[0]);
            add_inferred(tok[1]);
        }
        g.edges.emplace_back(tok[0], tok[1]);
    }
    validate_graph(g);
    return g;
}

Sigma2Instance parse_sigma2_text(const std::string& text) {
    std::vector<std::string> lines = content_lines(text);
    if (lines.size() != 3)
        throw std::invalid_argument(
            "quantified input: expected exactly three lines (exists, forall, dnf)");

    auto var_line = [](const std::string& line, const std::string& keyword) {
        std::vector<std::string> tok = split_ws(line);
        if (tok.empty() || tok[0] != keyword)
            throw std::invalid_argument("quantified input: expected a '" + keyword + "' line");
        for (std::size_t i = 1; i < tok.size(); ++i)
            if (!valid_name(tok[i]))
                throw std::invalid_argument("quantified input: bad variable name '" + tok[i] +
                                            "'");
        return std::vector<std::string>(tok.begin() + 1, tok.end());
    };

    Sigma2Instance inst;
    inst.exists_vars = var_line(lines[0], "exists");
    inst.forall_vars = var_line(lines[1], "forall");

    if (lines[2].rfind("dnf", 0) != 0 ||
        (lines[2].size() > 3 && !std::isspace(static_cast<unsigned char>(lines[2][3]))))
        throw std::invalid_argument("quantified input: expected a 'dnf' line");
    const std::string matrix = trimmed(lines[2].substr(3));
    if (!matrix.empty()) {
        for (const std::string& conjunct_text : split_on(matrix, '|')) {
            std::vector<DnfLiteral> conjunct;
            for (const std::string& raw : split_on(conjunct_text, '&')) {
                std::string lit = trimmed(raw);
                if (lit.empty())
                    throw std::invalid_argument("quantified input: empty literal in dnf");
                DnfLiteral l;
                if (lit[0] == '~') {
                    l.negated = true;
                    lit = trimmed(lit.substr(1));
                }
                if (!valid_name(lit))
                    throw std::invalid_argument("quantified input: bad literal '" + raw + "'");
                l.var = lit;
                conjunct.push_back(std::move(l));
            }
            inst.dnf.push_back(std::move(conjunct));
        }
    }
    validate_sigma2(inst);
    return inst;
}

ReductionOutput reduce_vertex_cover(const VCInstance& inst) {
    validate_vc(inst);
    for (const std::string& v : inst.graph.vertices)
        if (v == "q")
            throw std::invalid_argument(
                "vertex cover reduction: vertex name collides with the reserved atom q");

    json meta;
    meta["reserved_atom"] = "q";
    meta["cover_budget"] = inst.k;

    // psi: k repetitions of q.
    std::vector<Formula> psi_parts(static_cast<std::size_t>(inst.k), Formula::atom("q"));

    // theta: one guard disjunct per vertex of nonzero degree, in declaration
    // order; each is ¬q ∧ (¬v ∨ … ∨ ¬v) with one ¬v per incident edge.
    std::vector<Formula> theta_parts;
    json theta_meta = json::array();
    json dropped = json::array();
    for (const std::string& v : inst.graph.vertices) {
        int deg = vertex_degree(inst.graph, v);
        if (deg == 0) {
            dropped.push_back(v);
            continue;
        }
        std::vector<Formula> copies(static_cast<std::size_t>(deg), Formula::neg_atom(v));
        theta_parts.push_back(Formula::conj(Formula::neg_atom("q"), join_or(copies)));
        theta_meta.push_back({{"vertex", v}, {"degree", deg}});
    }
    if (theta_parts.empty())
        throw std::invalid_argument(
            "vertex cover reduction: every vertex has degree zero");  // unreachable: edges exist

    // omega: one endpoint disjunction per edge, in declaration order.
    std::vector<Formula> omega_parts;
    json omega_meta = json::array();
    for (const auto& [a, b] : inst.graph.edges) {
        omega_parts.push_back(Formula::disj(Formula::atom(a), Formula::atom(b)));
        omega_meta.push_back({a, b});
    }

    Formula f = Formula::disj(
        join_or(psi_parts), Formula::disj(join_or(theta_parts), join_and(omega_parts)));

    meta["psi_literal_count"] = inst.k;
    meta["theta"] = std::move(theta_meta);
    meta["omega_edges"] = std::move(omega_meta);
    meta["dropped_degree_zero_vertices"] = dropped;
    json notes = json::array();
    for (const auto& v : dropped)
        notes.push_back("degree-0 vertex " + v.get<std::string>() +
                        " omitted from the guard disjunction (its inner disjunction would be "
                        "empty); such a vertex is never required in a cover");
    meta["notes"] = std::move(notes);
    meta["formula_length"] = formula_length(f);
    return {std::move(f), std::move(meta)};
}

Formula vc_to_cl5minus(const VCInstance& inst) { return reduce_vertex_cover(inst).formula; }

ReductionOutput reduce_sigma2(const Sigma2Instance& inst) {
    validate_sigma2(inst);

    std::set<std::string> declared(inst.exists_vars.begin(), inst.exists_vars.end());
    declared.insert(inst.forall_vars.begin(), inst.forall_vars.end());
    std::set<std::string> minted;
    auto mint = [&](std::string name) {
        if (declared.count(name))
            throw std::invalid_argument(
                "quantifier reduction: instance variable collides with generated atom " + name);
        if (!minted.insert(name).second)
            throw std::logic_error("quantifier reduction: atom generated twice: " + name);
        return name;
    };

    // Matrix occurrence counts per variable, by polarity.
    std::map<std::string, int> pos_total, neg_total;
    for (const auto& conjunct : inst.dnf)
        for (const DnfLiteral& lit : conjunct) (lit.negated ? neg_total : pos_total)[lit.var]++;
    auto count_in = [](const std::map<std::string, int>& m, const std::string& v) {
        auto it = m.find(v);
        return it == m.end() ? 0 : it->second;
    };

    json meta;
    json notes = json::array();

    // Step 1: guard block and replacement atoms for each exists-variable.
    struct ExistsNames {
        std::string guard;
        std::vector<std::string> pos, neg;
    };
    std::map<std::string, ExistsNames> exists_names;
    std::vector<Formula> guard_blocks;
    json exists_meta = json::array();
    for (const std::string& z : inst.exists_vars) {
        const int kz = count_in(pos_total, z);
        const int tz = count_in(neg_total, z);
        ExistsNames names;
        names.guard = mint("Z_" + z);
        for (int i = 1; i <= kz; ++i)
            names.pos.push_back(mint("u_" + z + "_" + std::to_string(i)));
        for (int j = 1; j <= tz; ++j)
            names.neg.push_back(mint("v_" + z + "_" + std::to_string(j)));

        std::vector<Formula> parts{Formula::atom(names.guard)};
        if (kz > 0) {
            std::vector<Formula> us;
            for (const std::string& u : names.pos) us.push_back(Formula::atom(u));
            parts.push_back(Formula::disj(Formula::neg_atom(names.guard), join_and(us)));
        }
        if (tz > 0) {
            std::vector<Formula> vs;
            for (const std::string& v : names.neg) vs.push_back(Formula::neg_atom(v));
            parts.push_back(Formula::disj(Formula::neg_atom(names.guard), join_and(vs)));
        }
        guard_blocks.push_back(join_and(parts));
        exists_meta.push_back({{"variable", z},
                               {"guard_atom", names.guard},
                               {"positive_atoms", names.pos},
                               {"negative_atoms", names.neg}});
        exists_names.emplace(z, std::move(names));
    }

    // Step 2 fresh grid (and unpaired singletons) for each forall-variable.
    json forall_meta = json::array();
    for (const std::string& y : inst.forall_vars) {
        const int r = count_in(pos_total, y);
        const int s = count_in(neg_total, y);
        json grid = json::array();
        for (int i = 1; i <= r; ++i) {
            json row = json::array();
            for (int j = 1; j <= s; ++j)
                row.push_back(
                    mint("P_" + y + "_" + std::to_string(i) + "_" + std::to_string(j)));
            grid.push_back(std::move(row));
        }
        json singletons = json::array();
        if (s == 0)
            for (int i = 1; i <= r; ++i) {
                singletons.push_back(mint("P_" + y + "_" + std::to_string(i) + "_0"));
                notes.push_back("positive occurrence " + std::to_string(i) + " of " + y +
                                " has no negative partner; replaced by a fresh singleton atom");
            }
        if (r == 0)
            for (int j = 1; j <= s; ++j) {
                singletons.push_back(mint("P_" + y + "_0_" + std::to_string(j)));
                notes.push_back("negative occurrence " + std::to_string(j) + " of " + y +
                                " has no positive partner; replaced by a fresh singleton atom");
            }
        forall_meta.push_back({{"variable", y},
                               {"positive_count", r},
                               {"negative_count", s},
                               {"pair_atoms", std::move(grid)},
                               {"singleton_atoms", std::move(singletons)}});
    }

    // Replace matrix occurrences left to right, building the consequent.
    std::map<std::string, int> pos_seen, neg_seen;
    json occurrence_meta = json::array();
    std::vector<Formula> conjunct_formulas;
    for (std::size_t c = 0; c < inst.dnf.size(); ++c) {
        std::vector<Formula> literal_formulas;
        for (std::size_t p = 0; p < inst.dnf[c].size(); ++p) {
            const DnfLiteral& lit = inst.dnf[c][p];
            const int idx = ++(lit.negated ? neg_seen : pos_seen)[lit.var];
            Formula repl;
            if (auto it = exists_names.find(lit.var); it != exists_names.end()) {
                const std::string& name =
                    lit.negated ? it->second.neg[idx - 1] : it->second.pos[idx - 1];
                repl = lit.negated ? Formula::neg_atom(name) : Formula::atom(name);
            } else if (!lit.negated) {
                const int s = count_in(neg_total, lit.var);
                std::vector<Formula> ds;
                if (s == 0) {
                    ds.push_back(
                        Formula::atom("P_" + lit.var + "_" + std::to_string(idx) + "_0"));
                } else {
                    for (int j = 1; j <= s; ++j)
                        ds.push_back(Formula::atom("P_" + lit.var + "_" + std::to_string(idx) +
                                                   "_" + std::to_string(j)));
                }
                repl = join_or(ds);
            } else {
                const int r = count_in(pos_total, lit.var);
                std::vector<Formula> ds;
                if (r == 0) {
                    ds.push_back(
                        Formula::neg_atom("P_" + lit.var + "_0_" + std::to_string(idx)));
                } else {
                    for (int i = 1; i <= r; ++i)
                        ds.push_back(Formula::neg_atom("P_" + lit.var + "_" + std::to_string(i) +
                                                       "_" + std::to_string(idx)));
                }
                repl = join_or(ds);
            }
            occurrence_meta.push_back({{"conjunct", c + 1},
                                       {"position", p + 1},
                                       {"variable", lit.var},
                                       {"negated", lit.negated},
                                       {"replacement", render_formula(repl)}});
            literal_formulas.push_back(std::move(repl));
        }
        conjunct_formulas.push_back(join_and(literal_formulas));
    }
    Formula consequent = join_or(conjunct_formulas);

    Formula f = guard_blocks.empty() ? consequent
                                     : implies_nnf(join_and(guard_blocks), consequent);

    meta["exists"] = std::move(exists_meta);
    meta["forall"] = std::move(forall_meta);
    meta["occurrences"] = std::move(occurrence_meta);
    meta["notes"] = std::move(notes);
    meta["formula_length"] = formula_length(f);
    return {std::move(f), std::move(meta)};
}

Formula tqbf_to_cl5(const Sigma2Instance& inst) { return reduce_sigma2(inst).formula; }

}  // namespace cirq
