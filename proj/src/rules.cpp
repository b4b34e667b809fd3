#include "cirq/rules.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

namespace cirq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool group_contains(const Group& g, int x) { return std::binary_search(g.begin(), g.end(), x); }

[[noreturn]] void fail(const char* code, const std::string& msg) { throw RuleError(code, msg); }

void check_index(bool ok, const std::string& what) {
    if (!ok) fail("INDEX_OUT_OF_RANGE", what);
}

// Counting facts behind the width and size bounds: for rules admitted without
// duplication or contraction, premises together never have fewer ogroups than
// the conclusion (axioms aside), never more positive atom occurrences, and
// only the two introduction rules can lower the arc count.
void check_counting_invariants(const RuleApplication& r, const std::vector<Cirquent>& premises,
                               const Cirquent& conclusion) {
    if (!rule_admitted(SystemId::CL5Minus, r)) return;
    int prem_groups = 0, prem_pos = 0, prem_arcs = 0;
    for (const Cirquent& p : premises) {
        prem_groups += static_cast<int>(p.groups.size());
        prem_pos += pool_positive_occurrences(p);
        prem_arcs += arc_count(p);
    }
    if (!premises.empty()) assert(prem_groups >= static_cast<int>(conclusion.groups.size()));
    assert(prem_pos <= pool_positive_occurrences(conclusion));
    bool intro = std::holds_alternative<rules::OrIntro>(r) ||
                 std::holds_alternative<rules::AndIntro>(r);
    if (!intro) assert(prem_arcs <= arc_count(conclusion));
    (void)prem_groups;
    (void)prem_pos;
    (void)prem_arcs;
    (void)intro;
}

}  // namespace

std::string system_name(SystemId s) {
    switch (s) {
        case SystemId::CCC:
            return "ccc";
        case SystemId::CL5:
            return "cl5";
        case SystemId::CL5Minus:
            return "cl5minus";
    }
    return "?";
}

SystemId system_from_name(std::string_view name) {
    if (name == "ccc" || name == "CCC") return SystemId::CCC;
    if (name == "cl5" || name == "CL5") return SystemId::CL5;
    if (name == "cl5minus" || name == "CL5MINUS" || name == "cl5-" || name == "CL5-")
        return SystemId::CL5Minus;
    throw std::invalid_argument("unknown system \"" + std::string(name) +
                                "\" (expected ccc, cl5, or cl5minus)");
}

std::string rule_name(const RuleApplication& r) {
    return std::visit(
        overloaded{[](const rules::EmptyAxiom&) { return "EmptyAxiom"; },
                   [](const rules::IdentityAxiom&) { return "IdentityAxiom"; },
                   [](const rules::Mix&) { return "Mix"; },
                   [](const rules::OformulaExchange&) { return "OformulaExchange"; },
                   [](const rules::OgroupExchange&) { return "OgroupExchange"; },
                   [](const rules::PoolWeakening&) { return "PoolWeakening"; },
                   [](const rules::OgroupWeakening&) { return "OgroupWeakening"; },
                   [](const rules::DuplicationDown&) { return "DuplicationDown"; },
                   [](const rules::DuplicationUp&) { return "DuplicationUp"; },
                   [](const rules::Contraction&) { return "Contraction"; },
                   [](const rules::OrIntro&) { return "OrIntro"; },
                   [](const rules::AndIntro&) { return "AndIntro"; }},
        r);
}

int premise_arity(const RuleApplication& r) {
    if (std::holds_alternative<rules::EmptyAxiom>(r) ||
        std::holds_alternative<rules::IdentityAxiom>(r))
        return 0;
    if (std::holds_alternative<rules::Mix>(r)) return 2;
    return 1;
}

bool rule_admitted(SystemId s, const RuleApplication& r) {
    if (std::holds_alternative<rules::Contraction>(r)) return s == SystemId::CCC;
    if (std::holds_alternative<rules::DuplicationDown>(r) ||
        std::holds_alternative<rules::DuplicationUp>(r))
        return s != SystemId::CL5Minus;
    return true;
}

bool is_exchange(const RuleApplication& r) {
    return std::holds_alternative<rules::OformulaExchange>(r) ||
           std::holds_alternative<rules::OgroupExchange>(r);
}

Cirquent apply(const RuleApplication& r, const std::vector<Cirquent>& premises) {
    const int want = premise_arity(r);
    if (static_cast<int>(premises.size()) != want)
        fail("ARITY_MISMATCH", rule_name(r) + " takes " + std::to_string(want) +
                                   " premise(s), got " + std::to_string(premises.size()));
    for (const Cirquent& p : premises) validate(p);

    Cirquent out = std::visit(
        overloaded{
            [&](const rules::EmptyAxiom&) { return Cirquent{}; },
            [&](const rules::IdentityAxiom& a) {
                if (!a.f) fail("INVALID_FORMULA", "IdentityAxiom needs a formula");
                Cirquent c;
                c.pool = {nnf_negate(a.f), a.f};
                c.groups = {Group{0, 1}};
                return c;
            },
            [&](const rules::Mix&) {
                const Cirquent& a = premises[0];
                const Cirquent& b = premises[1];
                Cirquent c;
                c.pool = a.pool;
                c.pool.insert(c.pool.end(), b.pool.begin(), b.pool.end());
                c.groups = a.groups;
                const int shift = static_cast<int>(a.pool.size());
                for (const Group& g : b.groups) {
                    Group sg;
                    sg.reserve(g.size());
                    for (int j : g) sg.push_back(j + shift);
                    c.groups.push_back(std::move(sg));
                }
                return c;
            },
            [&](const rules::OformulaExchange& e) {
                const Cirquent& p = premises[0];
                check_index(e.i >= 0 && e.i + 1 < static_cast<int>(p.pool.size()),
                            "OformulaExchange at " + std::to_string(e.i));
                Cirquent c = p;
                std::swap(c.pool[e.i], c.pool[e.i + 1]);
                for (Group& g : c.groups) {
                    for (int& j : g)
                        if (j == e.i)
                            j = e.i + 1;
                        else if (j == e.i + 1)
                            j = e.i;
                    std::sort(g.begin(), g.end());
                }
                return c;
            },
            [&](const rules::OgroupExchange& e) {
                const Cirquent& p = premises[0];
                check_index(e.i >= 0 && e.i + 1 < static_cast<int>(p.groups.size()),
                            "OgroupExchange at " + std::to_string(e.i));
                Cirquent c = p;
                std::swap(c.groups[e.i], c.groups[e.i + 1]);
                return c;
            },
            [&](const rules::PoolWeakening& w) {
                const Cirquent& p = premises[0];
                check_index(w.pos >= 0 && w.pos <= static_cast<int>(p.pool.size()),
                            "PoolWeakening at " + std::to_string(w.pos));
                if (!w.f) fail("INVALID_FORMULA", "PoolWeakening needs a formula");
                Cirquent c;
                c.pool = p.pool;
                c.pool.insert(c.pool.begin() + w.pos, w.f);
                c.groups = p.groups;
                for (Group& g : c.groups)
                    for (int& j : g)
                        if (j >= w.pos) ++j;
                return c;
            },
            [&](const rules::OgroupWeakening& w) {
                const Cirquent& p = premises[0];
                check_index(w.g >= 0 && w.g < static_cast<int>(p.groups.size()),
                            "OgroupWeakening group " + std::to_string(w.g));
                check_index(w.o >= 0 && w.o < static_cast<int>(p.pool.size()),
                            "OgroupWeakening oformula " + std::to_string(w.o));
                if (group_contains(p.groups[w.g], w.o))
                    fail("OGROUP_WEAKENING_ARC_EXISTS",
                         "group " + std::to_string(w.g + 1) + " already contains oformula " +
                             std::to_string(w.o + 1));
                Cirquent c = p;
                Group& g = c.groups[w.g];
                g.insert(std::upper_bound(g.begin(), g.end(), w.o), w.o);
                return c;
            },
            [&](const rules::DuplicationDown& d) {
                const Cirquent& p = premises[0];
                check_index(d.g >= 0 && d.g < static_cast<int>(p.groups.size()),
                            "DuplicationDown group " + std::to_string(d.g));
                Cirquent c = p;
                c.groups.insert(c.groups.begin() + d.g, p.groups[d.g]);
                return c;
            },
            [&](const rules::DuplicationUp& d) {
                const Cirquent& p = premises[0];
                check_index(d.g >= 0 && d.g + 1 < static_cast<int>(p.groups.size()),
                            "DuplicationUp group " + std::to_string(d.g));
                if (p.groups[d.g] != p.groups[d.g + 1])
                    fail("DUP_UP_NOT_IDENTICAL", "groups " + std::to_string(d.g + 1) + " and " +
                                                     std::to_string(d.g + 2) +
                                                     " are not identical");
                Cirquent c = p;
                c.groups.erase(c.groups.begin() + d.g + 1);
                return c;
            },
            [&](const rules::Contraction& k) {
                const Cirquent& p = premises[0];
                check_index(k.i >= 0 && k.i + 1 < static_cast<int>(p.pool.size()),
                            "Contraction at " + std::to_string(k.i));
                if (p.pool[k.i] != p.pool[k.i + 1])
                    fail("CONTRACTION_NOT_IDENTICAL",
                         "oformulas " + std::to_string(k.i + 1) + " and " +
                             std::to_string(k.i + 2) + " differ");
                return merge_oformulas(p, k.i, p.pool[k.i]);
            },
            [&](const rules::OrIntro& o) {
                const Cirquent& p = premises[0];
                check_index(o.i >= 0 && o.i + 1 < static_cast<int>(p.pool.size()),
                            "OrIntro at " + std::to_string(o.i));
                return merge_oformulas(p, o.i,
                                       Formula::disj(p.pool[o.i], p.pool[o.i + 1]));
            },
            [&](const rules::AndIntro& a) {
                const Cirquent& p = premises[0];
                const int i = a.i;
                const int m = static_cast<int>(p.groups.size());
                check_index(i >= 0 && i + 1 < static_cast<int>(p.pool.size()),
                            "AndIntro at " + std::to_string(i));
                for (int g = 0; g < m; ++g)
                    if (group_contains(p.groups[g], i) && group_contains(p.groups[g], i + 1))
                        fail("AND_INTRO_SHARED_GROUP",
                             "group " + std::to_string(g + 1) + " contains both oformulas " +
                                 std::to_string(i + 1) + " and " + std::to_string(i + 2));
                for (int g = 0; g < m; ++g) {
                    if (group_contains(p.groups[g], i) &&
                        (g + 1 >= m || !group_contains(p.groups[g + 1], i + 1)))
                        fail("AND_INTRO_UNPAIRED_GROUP",
                             "group " + std::to_string(g + 1) + " contains oformula " +
                                 std::to_string(i + 1) +
                                 " but is not immediately followed by a group containing " +
                                 std::to_string(i + 2));
                    if (group_contains(p.groups[g], i + 1) &&
                        (g == 0 || !group_contains(p.groups[g - 1], i)))
                        fail("AND_INTRO_UNPAIRED_GROUP",
                             "group " + std::to_string(g + 1) + " contains oformula " +
                                 std::to_string(i + 2) +
                                 " but is not immediately preceded by a group containing " +
                                 std::to_string(i + 1));
                }
                Cirquent paired;
                paired.pool = p.pool;
                for (int g = 0; g < m; ++g) {
                    if (group_contains(p.groups[g], i)) {
                        Group u = p.groups[g];
                        u.insert(u.end(), p.groups[g + 1].begin(), p.groups[g + 1].end());
                        paired.groups.push_back(normalized_group(std::move(u)));
                        ++g;  // the following group was consumed by the pairing
                    } else {
                        paired.groups.push_back(p.groups[g]);
                    }
                }
                return merge_oformulas(paired, i,
                                       Formula::conj(p.pool[i], p.pool[i + 1]));
            }},
        r);

    check_counting_invariants(r, premises, out);
    return out;
}

nlohmann::json rule_to_json(const RuleApplication& r) {
    nlohmann::json j;
    j["rule"] = rule_name(r);
    std::visit(overloaded{[&](const rules::EmptyAxiom&) {},
                          [&](const rules::IdentityAxiom& a) { j["f"] = render_formula(a.f); },
                          [&](const rules::Mix&) {},
                          [&](const rules::OformulaExchange& e) { j["i"] = e.i + 1; },
                          [&](const rules::OgroupExchange& e) { j["i"] = e.i + 1; },
                          [&](const rules::PoolWeakening& w) {
                              j["pos"] = w.pos + 1;
                              j["f"] = render_formula(w.f);
                          },
                          [&](const rules::OgroupWeakening& w) {
                              j["g"] = w.g + 1;
                              j["o"] = w.o + 1;
                          },
                          [&](const rules::DuplicationDown& d) { j["g"] = d.g + 1; },
                          [&](const rules::DuplicationUp& d) { j["g"] = d.g + 1; },
                          [&](const rules::Contraction& k) { j["i"] = k.i + 1; },
                          [&](const rules::OrIntro& o) { j["i"] = o.i + 1; },
                          [&](const rules::AndIntro& a) { j["i"] = a.i + 1; }},
               r);
    return j;
}

namespace {

int json_index(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw std::invalid_argument(std::string("rule JSON needs integer field \"") + field +
                                    "\"");
    return j[field].get<int>() - 1;
}

Formula json_formula(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string())
        throw std::invalid_argument(std::string("rule JSON needs formula field \"") + field +
                                    "\"");
    try {
        return parse_formula(j[field].get<std::string>());
    } catch (const ParseError& e) {
        throw std::invalid_argument(std::string("rule JSON field \"") + field + "\": " + e.what() +
                                    " at position " + std::to_string(e.position));
    }
}

}  // namespace

RuleApplication rule_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rule") || !j["rule"].is_string())
        throw std::invalid_argument("rule JSON must be an object with a \"rule\" name");
    const std::string name = j["rule"].get<std::string>();
    if (name == "EmptyAxiom") return rules::EmptyAxiom{};
    if (name == "IdentityAxiom") return rules::IdentityAxiom{json_formula(j, "f")};
    if (name == "Mix") return rules::Mix{};
    if (name == "OformulaExchange") return rules::OformulaExchange{json_index(j, "i")};
    if (name == "OgroupExchange") return rules::OgroupExchange{json_index(j, "i")};
    if (name == "PoolWeakening")
        return rules::PoolWeakening{json_index(j, "pos"), json_formula(j, "f")};
    if (name == "OgroupWeakening")
        return rules::OgroupWeakening{json_index(j, "g"), json_index(j, "o")};
    if (name == "DuplicationDown") return rules::DuplicationDown{json_index(j, "g")};
    if (name == "DuplicationUp") return rules::DuplicationUp{json_index(j, "g")};
    if (name == "Contraction") return rules::Contraction{json_index(j, "i")};
    if (name == "OrIntro") return rules::OrIntro{json_index(j, "i")};
    if (name == "AndIntro") return rules::AndIntro{json_index(j, "i")};
    throw std::invalid_argument("unknown rule tag \"" + name + "\"");
}

namespace {

// Odometer over per-group replacement options; each option is the sequence of
// premise groups standing in for one goal group.
void group_product(const std::vector<std::vector<std::vector<Group>>>& options,
                   const std::function<void(std::vector<Group>&&)>& emit) {
    std::uint64_t total = 1;
    for (const auto& o : options) {
        if (o.empty()) return;
        total *= o.size();
        if (total > (1u << 20))
            throw std::runtime_error("reverse enumeration: distribution product exceeds cap");
    }
    std::vector<std::size_t> pick(options.size(), 0);
    for (;;) {
        std::vector<Group> groups;
        for (std::size_t g = 0; g < options.size(); ++g)
            for (const Group& grp : options[g][pick[g]]) groups.push_back(grp);
        emit(std::move(groups));
        std::size_t d = 0;
        while (d < pick.size() && ++pick[d] == options[d].size()) {
            pick[d] = 0;
            ++d;
        }
        if (d == pick.size()) break;
    }
}

// Insert `extra` (one or two of {i, i+1}) into a sorted vector of indices all
// different from i and i+1.
Group with_positions(const Group& others, std::initializer_list<int> extra, int i) {
    Group out;
    out.reserve(others.size() + extra.size());
    auto split = std::lower_bound(others.begin(), others.end(), i);
    out.insert(out.end(), others.begin(), split);
    out.insert(out.end(), extra.begin(), extra.end());
    out.insert(out.end(), split, others.end());
    return out;
}

}  // namespace

std::vector<ReverseCandidate> enumerate_reverse(SystemId system, const Cirquent& goal,
                                                const GroupViability& viable) {
    validate(goal);
    std::vector<ReverseCandidate> out;
    const int n = static_cast<int>(goal.pool.size());
    const int m = static_cast<int>(goal.groups.size());

    auto ok_members = [&](const std::vector<Formula>& pool, const Group& g) {
        if (!viable) return true;
        std::vector<Formula> mem;
        mem.reserve(g.size());
        for (int j : g) mem.push_back(pool[j]);
        return viable(mem);
    };

    // Axioms.
    if (n == 0 && m == 0) out.push_back({rules::EmptyAxiom{}, {}, false});
    if (n == 2 && m == 1 && goal.groups[0] == Group{0, 1} &&
        goal.pool[0] == nnf_negate(goal.pool[1]))
        out.push_back({rules::IdentityAxiom{goal.pool[1]}, {}, false});

    // Splitting one pool entry i into two adjacent entries fl, fr; every group
    // containing i distributes over {fl}, {fr}, or both.  Shared by the
    // OrIntro and Contraction reversals.
    auto emit_split = [&](int i, const Formula& fl, const Formula& fr, RuleApplication rule,
                          bool grows) {
        std::vector<Formula> pool;
        pool.reserve(n + 1);
        for (int j = 0; j < i; ++j) pool.push_back(goal.pool[j]);
        pool.push_back(fl);
        pool.push_back(fr);
        for (int j = i + 1; j < n; ++j) pool.push_back(goal.pool[j]);

        std::vector<std::vector<std::vector<Group>>> options(m);
        for (int g = 0; g < m; ++g) {
            Group others;
            bool has = false;
            for (int j : goal.groups[g]) {
                if (j == i)
                    has = true;
                else
                    others.push_back(j < i ? j : j + 1);
            }
            if (!has) {
                options[g].push_back({others});
                continue;
            }
            for (auto extra : {std::initializer_list<int>{i}, {i + 1}, {i, i + 1}}) {
                Group cand = with_positions(others, extra, i);
                if (ok_members(pool, cand)) options[g].push_back({std::move(cand)});
            }
        }
        group_product(options, [&](std::vector<Group>&& groups) {
            Cirquent prem;
            prem.pool = pool;
            prem.groups = std::move(groups);
            out.push_back({rule, {std::move(prem)}, grows});
        });
    };

    for (int i = 0; i < n; ++i)
        if (goal.pool[i].kind() == FormulaKind::Or)
            emit_split(i, goal.pool[i].left(), goal.pool[i].right(), rules::OrIntro{i}, false);

    // AndIntro reversal: each group containing i becomes an adjacent pair of
    // groups whose other members are distributed three ways (left, right, or
    // both sides of the pair).
    for (int i = 0; i < n; ++i) {
        if (goal.pool[i].kind() != FormulaKind::And) continue;
        std::vector<Formula> pool;
        pool.reserve(n + 1);
        for (int j = 0; j < i; ++j) pool.push_back(goal.pool[j]);
        pool.push_back(goal.pool[i].left());
        pool.push_back(goal.pool[i].right());
        for (int j = i + 1; j < n; ++j) pool.push_back(goal.pool[j]);

        std::vector<std::vector<std::vector<Group>>> options(m);
        bool dead = false;
        for (int g = 0; g < m && !dead; ++g) {
            Group others;
            bool has = false;
            for (int j : goal.groups[g]) {
                if (j == i)
                    has = true;
                else
                    others.push_back(j < i ? j : j + 1);
            }
            if (!has) {
                options[g].push_back({others});
                continue;
            }
            const int s = static_cast<int>(others.size());
            if (s > 12)
                throw std::runtime_error("reverse enumeration: group too wide to distribute");
            std::uint64_t combos = 1;
            for (int t = 0; t < s; ++t) combos *= 3;
            for (std::uint64_t code = 0; code < combos; ++code) {
                Group left_others, right_others;
                std::uint64_t rest = code;
                for (int t = 0; t < s; ++t) {
                    int digit = static_cast<int>(rest % 3);
                    rest /= 3;
                    if (digit != 1) left_others.push_back(others[t]);
                    if (digit != 0) right_others.push_back(others[t]);
                }
                Group gf = with_positions(left_others, {i}, i);
                Group gg = with_positions(right_others, {i + 1}, i);
                if (ok_members(pool, gf) && ok_members(pool, gg))
                    options[g].push_back({std::move(gf), std::move(gg)});
            }
            if (options[g].empty()) dead = true;
        }
        if (dead) continue;
        group_product(options, [&](std::vector<Group>&& groups) {
            Cirquent prem;
            prem.pool = pool;
            prem.groups = std::move(groups);
            out.push_back({rules::AndIntro{i}, {std::move(prem)}, false});
        });
    }

    // PoolWeakening reversal: drop an oformula no group points at.
    {
        std::vector<char> has_arc(n, 0);
        for (const Group& g : goal.groups)
            for (int j : g) has_arc[j] = 1;
        for (int i = 0; i < n; ++i) {
            if (has_arc[i]) continue;
            Cirquent prem;
            prem.pool.reserve(n - 1);
            for (int j = 0; j < n; ++j)
                if (j != i) prem.pool.push_back(goal.pool[j]);
            prem.groups = goal.groups;
            for (Group& g : prem.groups)
                for (int& j : g)
                    if (j > i) --j;
            out.push_back({rules::PoolWeakening{i, goal.pool[i]}, {std::move(prem)}, false});
        }
    }

    // OgroupWeakening reversal: drop one arc.
    for (int g = 0; g < m; ++g) {
        for (int o : goal.groups[g]) {
            Group reduced;
            reduced.reserve(goal.groups[g].size() - 1);
            for (int j : goal.groups[g])
                if (j != o) reduced.push_back(j);
            if (!ok_members(goal.pool, reduced)) continue;
            Cirquent prem = goal;
            prem.groups[g] = std::move(reduced);
            out.push_back({rules::OgroupWeakening{g, o}, {std::move(prem)}, false});
        }
    }

    // DuplicationDown reversal: two identical groups collapse to one.
    if (system != SystemId::CL5Minus) {
        std::map<Group, std::vector<int>> positions;
        for (int g = 0; g < m; ++g) positions[goal.groups[g]].push_back(g);
        for (const auto& [value, where] : positions) {
            if (where.size() < 2) continue;
            Cirquent prem = goal;
            prem.groups.erase(prem.groups.begin() + where.back());
            out.push_back({rules::DuplicationDown{where.front()}, {std::move(prem)}, false});
        }
    }

    // Mix reversal: split along connectivity components (two pool indices are
    // connected when some group contains both).
    if (n >= 2) {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const Group& g : goal.groups)
            for (std::size_t k = 1; k < g.size(); ++k) parent[find(g[k])] = find(g[0]);
        std::vector<int> comp_of(n, -1);
        int r = 0;
        for (int j = 0; j < n; ++j) {
            int root = find(j);
            if (comp_of[root] == -1) comp_of[root] = r++;
            comp_of[j] = comp_of[root];
        }
        if (r >= 2) {
            if (r > 20) throw std::runtime_error("reverse enumeration: too many mix components");
            for (std::uint32_t mask = 1; mask < (1u << r) - 1u; mask += 2) {
                Cirquent left, right;
                std::vector<int> remap(n, -1);
                for (int j = 0; j < n; ++j) {
                    bool to_left = (mask >> comp_of[j]) & 1u;
                    std::vector<Formula>& pool = to_left ? left.pool : right.pool;
                    remap[j] = static_cast<int>(pool.size());
                    pool.push_back(goal.pool[j]);
                }
                for (const Group& g : goal.groups) {
                    bool to_left = g.empty() || ((mask >> comp_of[g[0]]) & 1u);
                    Group mapped;
                    mapped.reserve(g.size());
                    for (int j : g) mapped.push_back(remap[j]);
                    (to_left ? left.groups : right.groups).push_back(std::move(mapped));
                }
                out.push_back({rules::Mix{}, {std::move(left), std::move(right)}, false});
            }
        }
    }

    // DuplicationUp reversal (grows): the premise repeats one of the goal's
    // groups; one candidate per distinct group value.
    if (system != SystemId::CL5Minus) {
        std::set<Group> seen;
        for (int g = 0; g < m; ++g) {
            if (!seen.insert(goal.groups[g]).second) continue;
            Cirquent prem = goal;
            prem.groups.insert(prem.groups.begin() + g + 1, goal.groups[g]);
            out.push_back({rules::DuplicationUp{g}, {std::move(prem)}, true});
        }
    }

    // Contraction reversal (grows, CCC only): split any oformula into two
    // identical adjacent copies and distribute arcs.
    if (system == SystemId::CCC)
        for (int i = 0; i < n; ++i)
            emit_split(i, goal.pool[i], goal.pool[i], rules::Contraction{i}, true);

    return out;
}

std::vector<RuleApplication> transposition_chain(std::vector<int> pool_perm,
                                                 std::vector<int> group_perm) {
    auto check_perm = [](const std::vector<int>& p) {
        std::vector<char> seen(p.size(), 0);
        for (int v : p) {
            if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
                throw std::invalid_argument("transposition_chain: not a permutation");
            seen[v] = 1;
        }
    };
    check_perm(pool_perm);
    check_perm(group_perm);

    std::vector<RuleApplication> chain;
    auto bubble = [&chain](std::vector<int>& mp, auto make_rule) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int p = 0; p + 1 < static_cast<int>(mp.size()); ++p) {
                if (mp[p] > mp[p + 1]) {
                    std::swap(mp[p], mp[p + 1]);
                    chain.push_back(make_rule(p));
                    changed = true;
                }
            }
        }
    };
    bubble(pool_perm, [](int p) { return RuleApplication(rules::OformulaExchange{p}); });
    bubble(group_perm, [](int p) { return RuleApplication(rules::OgroupExchange{p}); });
    return chain;
}

std::vector<RuleApplication> exchange_chain(const Cirquent& from, const Cirquent& to) {
    CanonicalPerms a = canonicalize(from, render_ranks(from));
    CanonicalPerms b = canonicalize(to, render_ranks(to));
    if (apply_perms(from, a) != apply_perms(to, b))
        throw std::logic_error("exchange_chain: cirquents are not exchange-equivalent");

    const int n = static_cast<int>(from.pool.size());
    const int m = static_cast<int>(from.groups.size());
    std::vector<int> binv_pool(n), binv_grp(m);
    for (int j = 0; j < n; ++j) binv_pool[b.pool_perm[j]] = j;
    for (int g = 0; g < m; ++g) binv_grp[b.group_perm[g]] = g;
    std::vector<int> sigma(n), tau(m);
    for (int j = 0; j < n; ++j) sigma[j] = binv_pool[a.pool_perm[j]];
    for (int g = 0; g < m; ++g) tau[g] = binv_grp[a.group_perm[g]];

    std::vector<RuleApplication> chain = transposition_chain(std::move(sigma), std::move(tau));
    Cirquent cur = from;
    for (const RuleApplication& r : chain) cur = apply(r, {cur});
    if (cur != to) throw std::logic_error("exchange_chain: replay mismatch");
    return chain;
}

}  // namespace cirq
