#include "cirq/cirquent.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cirq {

Cirquent formula_cirquent(const Formula& f) {
    Cirquent c;
    c.pool.push_back(f);
    c.groups.push_back(Group{0});
    return c;
}

Group normalized_group(Group g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

void validate(const Cirquent& c) {
    const int n = static_cast<int>(c.pool.size());
    for (const Formula& f : c.pool)
        if (!f) throw std::invalid_argument("cirquent pool holds an empty formula handle");
    for (std::size_t g = 0; g < c.groups.size(); ++g) {
        const Group& grp = c.groups[g];
        for (std::size_t k = 0; k < grp.size(); ++k) {
            if (grp[k] < 0 || grp[k] >= n)
                throw std::invalid_argument("group " + std::to_string(g + 1) +
                                            " references oformula " + std::to_string(grp[k] + 1) +
                                            " outside the pool");
            if (k > 0 && grp[k - 1] >= grp[k])
                throw std::invalid_argument("group " + std::to_string(g + 1) +
                                            " is not a sorted set of distinct indices");
        }
    }
}

Cirquent merge_ogroups(const Cirquent& c, int i) {
    if (i < 0 || i + 1 >= static_cast<int>(c.groups.size()))
        throw std::invalid_argument("merge_ogroups: no adjacent group pair at " + std::to_string(i));
    Cirquent out;
    out.pool = c.pool;
    out.groups.reserve(c.groups.size() - 1);
    for (int g = 0; g < static_cast<int>(c.groups.size()); ++g) {
        if (g == i) {
            Group u = c.groups[g];
            u.insert(u.end(), c.groups[g + 1].begin(), c.groups[g + 1].end());
            out.groups.push_back(normalized_group(std::move(u)));
        } else if (g != i + 1) {
            out.groups.push_back(c.groups[g]);
        }
    }
    return out;
}

Cirquent merge_oformulas(const Cirquent& c, int i, const Formula& h) {
    if (i < 0 || i + 1 >= static_cast<int>(c.pool.size()))
        throw std::invalid_argument("merge_oformulas: no adjacent oformula pair at " +
                                    std::to_string(i));
    Cirquent out;
    out.pool.reserve(c.pool.size() - 1);
    for (int j = 0; j < static_cast<int>(c.pool.size()); ++j) {
        if (j == i)
            out.pool.push_back(h);
        else if (j != i + 1)
            out.pool.push_back(c.pool[j]);
    }
    out.groups.reserve(c.groups.size());
    for (const Group& grp : c.groups) {
        Group mapped;
        mapped.reserve(grp.size());
        for (int j : grp) mapped.push_back(j <= i ? std::min(j, i) : (j == i + 1 ? i : j - 1));
        out.groups.push_back(normalized_group(std::move(mapped)));
    }
    return out;
}

int cirquent_size(const Cirquent& c) {
    int total = 0;
    for (const Formula& f : c.pool) total += formula_length(f);
    for (const Group& g : c.groups) total += static_cast<int>(g.size());
    return total;
}

int arc_count(const Cirquent& c) {
    int total = 0;
    for (const Group& g : c.groups) total += static_cast<int>(g.size());
    return total;
}

int pool_positive_occurrences(const Cirquent& c) {
    int total = 0;
    for (const Formula& f : c.pool) total += positive_occurrence_count(f);
    return total;
}

namespace {

// Dense-rank arbitrary comparable keys: equal keys share a rank, ranks follow
// key order starting at 0.
template <typename K>
std::vector<int> dense_rank(const std::vector<K>& keys) {
    std::map<K, int> order;
    for (const K& k : keys) order.emplace(k, 0);
    int next = 0;
    for (auto& kv : order) kv.second = next++;
    std::vector<int> out;
    out.reserve(keys.size());
    for (const K& k : keys) out.push_back(order.at(k));
    return out;
}

struct TieClass {
    std::vector<std::vector<int>> twins;  // twin subclasses, original order inside
    int slot_base = 0;                    // first canonical slot of this class
};

// Group contents under a pool permutation, each sorted, used both as the
// tie-break objective and to derive the canonical group order.
std::vector<std::vector<int>> remapped_group_contents(const Cirquent& c,
                                                      const std::vector<int>& pool_perm) {
    std::vector<std::vector<int>> contents;
    contents.reserve(c.groups.size());
    for (const Group& g : c.groups) {
        std::vector<int> m;
        m.reserve(g.size());
        for (int j : g) m.push_back(pool_perm[j]);
        std::sort(m.begin(), m.end());
        contents.push_back(std::move(m));
    }
    return contents;
}

}  // namespace

CanonicalPerms canonicalize(const Cirquent& c, const std::vector<int>& ranks) {
    const int n = static_cast<int>(c.pool.size());
    const int m = static_cast<int>(c.groups.size());
    if (static_cast<int>(ranks.size()) != n)
        throw std::invalid_argument("canonicalize: ranks size does not match pool size");

    std::vector<std::vector<int>> groups_of(n);
    for (int g = 0; g < m; ++g)
        for (int j : c.groups[g]) groups_of[j].push_back(g);

    // Iterative refinement: position colors absorb the colors of containing
    // groups, group colors absorb the colors of their members, until stable.
    std::vector<int> pcol = dense_rank(ranks);
    std::vector<int> gcol(m, 0);
    for (int round = 0; round < n + m + 2; ++round) {
        std::vector<std::pair<int, std::vector<int>>> gsig(m);
        for (int g = 0; g < m; ++g) {
            std::vector<int> s;
            s.reserve(c.groups[g].size());
            for (int j : c.groups[g]) s.push_back(pcol[j]);
            std::sort(s.begin(), s.end());
            gsig[g] = {gcol[g], std::move(s)};
        }
        std::vector<int> new_gcol = dense_rank(gsig);

        std::vector<std::pair<int, std::vector<int>>> psig(n);
        for (int j = 0; j < n; ++j) {
            std::vector<int> s;
            s.reserve(groups_of[j].size());
            for (int g : groups_of[j]) s.push_back(new_gcol[g]);
            std::sort(s.begin(), s.end());
            psig[j] = {pcol[j], std::move(s)};
        }
        std::vector<int> new_pcol = dense_rank(psig);

        bool stable = (new_gcol == gcol) && (new_pcol == pcol);
        gcol = std::move(new_gcol);
        pcol = std::move(new_pcol);
        if (stable) break;
    }

    // Canonical pool order: sort by final color; positions still tied are
    // enumerated, except that "twins" (same color and the same containing
    // groups) are interchangeable by an automorphism and need no enumeration.
    std::map<int, std::vector<int>> by_color;
    for (int j = 0; j < n; ++j) by_color[pcol[j]].push_back(j);

    std::vector<TieClass> classes;
    int slot = 0;
    std::uint64_t leaf_estimate = 1;
    for (auto& [color, members] : by_color) {
        TieClass tc;
        tc.slot_base = slot;
        slot += static_cast<int>(members.size());
        std::map<std::vector<int>, std::vector<int>> twin_map;
        for (int j : members) twin_map[groups_of[j]].push_back(j);
        for (auto& kv : twin_map) tc.twins.push_back(kv.second);
        // multinomial |members|! / prod |twin|!
        std::uint64_t ways = 1;
        {
            int placed = 0;
            for (const auto& tw : tc.twins)
                for (std::size_t t = 0; t < tw.size(); ++t) {
                    ++placed;
                    ways = ways * placed / (t + 1);
                }
        }
        leaf_estimate *= ways;
        if (leaf_estimate > 1000000)
            throw std::runtime_error("canonicalize: tie enumeration exceeds safety cap");
        classes.push_back(std::move(tc));
    }

    std::vector<int> perm(n, -1);
    std::vector<int> best_perm;
    std::vector<std::vector<int>> best_contents;

    // Arrangement state per class: a vector of twin ids in slot order.
    std::vector<std::vector<int>> arrangement(classes.size());
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        for (std::size_t t = 0; t < classes[ci].twins.size(); ++t)
            arrangement[ci].insert(arrangement[ci].end(), classes[ci].twins[t].size(),
                                   static_cast<int>(t));
        std::sort(arrangement[ci].begin(), arrangement[ci].end());
    }

    auto place_class = [&](std::size_t ci) {
        const TieClass& tc = classes[ci];
        std::vector<std::size_t> used(tc.twins.size(), 0);
        for (std::size_t k = 0; k < arrangement[ci].size(); ++k) {
            int tw = arrangement[ci][k];
            perm[tc.twins[tw][used[tw]++]] = tc.slot_base + static_cast<int>(k);
        }
    };

    auto evaluate = [&]() {
        auto contents = remapped_group_contents(c, perm);
        std::sort(contents.begin(), contents.end());
        if (best_perm.empty() || contents < best_contents) {
            best_contents = std::move(contents);
            best_perm = perm;
        }
    };

    auto rec = [&](auto&& self, std::size_t ci) -> void {
        if (ci == classes.size()) {
            evaluate();
            return;
        }
        std::vector<int>& arr = arrangement[ci];
        std::sort(arr.begin(), arr.end());
        do {
            place_class(ci);
            self(self, ci + 1);
        } while (std::next_permutation(arr.begin(), arr.end()));
    };
    if (n == 0) {
        evaluate();
    } else {
        rec(rec, 0);
    }

    CanonicalPerms result;
    result.pool_perm = best_perm.empty() ? std::vector<int>{} : best_perm;

    // Canonical group order: stable sort by remapped content (identical
    // contents are interchangeable, original order kept among them).
    auto contents = remapped_group_contents(c, result.pool_perm);
    std::vector<int> order(m);
    for (int g = 0; g < m; ++g) order[g] = g;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return contents[a] < contents[b]; });
    result.group_perm.assign(m, 0);
    for (int k = 0; k < m; ++k) result.group_perm[order[k]] = k;
    return result;
}

std::vector<int> render_ranks(const Cirquent& c) {
    std::vector<std::string> texts;
    texts.reserve(c.pool.size());
    for (const Formula& f : c.pool) texts.push_back(render_formula(f));
    return dense_rank(texts);
}

Cirquent apply_perms(const Cirquent& c, const CanonicalPerms& perms) {
    const int n = static_cast<int>(c.pool.size());
    const int m = static_cast<int>(c.groups.size());
    if (static_cast<int>(perms.pool_perm.size()) != n ||
        static_cast<int>(perms.group_perm.size()) != m)
        throw std::invalid_argument("apply_perms: permutation sizes do not match cirquent");
    Cirquent out;
    out.pool.resize(n);
    for (int j = 0; j < n; ++j) out.pool[perms.pool_perm[j]] = c.pool[j];
    out.groups.resize(m);
    for (int g = 0; g < m; ++g) {
        Group mapped;
        mapped.reserve(c.groups[g].size());
        for (int j : c.groups[g]) mapped.push_back(perms.pool_perm[j]);
        std::sort(mapped.begin(), mapped.end());
        out.groups[perms.group_perm[g]] = std::move(mapped);
    }
    return out;
}

std::string canonical_key(const Cirquent& c) {
    return render_text(apply_perms(c, canonicalize(c, render_ranks(c))));
}

std::string canonical_key_with_ranks(const Cirquent& c, const std::vector<int>& ranks) {
    CanonicalPerms perms = canonicalize(c, ranks);
    Cirquent canon = apply_perms(c, perms);
    // Encode ranks (not formulas) in canonical pool order, then groups.
    std::vector<int> slot_rank(c.pool.size());
    for (std::size_t j = 0; j < c.pool.size(); ++j) slot_rank[perms.pool_perm[j]] = ranks[j];
    std::string key;
    key.reserve(c.pool.size() * 3 + arc_count(c) * 3 + 8);
    for (int r : slot_rank) {
        key += std::to_string(r);
        key += ',';
    }
    key += '|';
    for (const Group& g : canon.groups) {
        key += '{';
        for (int j : g) {
            key += std::to_string(j);
            key += ',';
        }
        key += '}';
    }
    return key;
}

std::string render_text(const Cirquent& c) {
    std::string out;
    for (std::size_t j = 0; j < c.pool.size(); ++j) {
        if (j) out += ", ";
        out += render_formula(c.pool[j]);
    }
    out += " | ";
    for (std::size_t g = 0; g < c.groups.size(); ++g) {
        if (g) out += ' ';
        out += '{';
        for (std::size_t k = 0; k < c.groups[g].size(); ++k) {
            if (k) out += ',';
            out += std::to_string(c.groups[g][k] + 1);
        }
        out += '}';
    }
    return out;
}

std::string render_dot(const Cirquent& c) {
    std::ostringstream out;
    out << "digraph cirquent {\n";
    out << "  rankdir=BT;\n";
    for (std::size_t j = 0; j < c.pool.size(); ++j)
        out << "  f" << (j + 1) << " [shape=box, label=\"" << render_formula(c.pool[j])
            << "\"];\n";
    for (std::size_t g = 0; g < c.groups.size(); ++g)
        out << "  g" << (g + 1) << " [shape=point, xlabel=\"g" << (g + 1) << "\"];\n";
    for (std::size_t g = 0; g < c.groups.size(); ++g)
        for (int j : c.groups[g]) out << "  g" << (g + 1) << " -> f" << (j + 1) << ";\n";
    out << "}\n";
    return out.str();
}

nlohmann::json cirquent_to_json(const Cirquent& c) {
    nlohmann::json j;
    j["pool"] = nlohmann::json::array();
    for (const Formula& f : c.pool) j["pool"].push_back(render_formula(f));
    j["groups"] = nlohmann::json::array();
    for (const Group& g : c.groups) {
        nlohmann::json arr = nlohmann::json::array();
        for (int v : g) arr.push_back(v + 1);
        j["groups"].push_back(std::move(arr));
    }
    return j;
}

Cirquent cirquent_from_json(const nlohmann::json& j, std::vector<std::string>* warnings) {
    if (!j.is_object() || !j.contains("pool") || !j.contains("groups"))
        throw std::invalid_argument("cirquent JSON must be an object with \"pool\" and \"groups\"");
    if (!j["pool"].is_array() || !j["groups"].is_array())
        throw std::invalid_argument("cirquent JSON \"pool\" and \"groups\" must be arrays");
    Cirquent c;
    for (std::size_t k = 0; k < j["pool"].size(); ++k) {
        const auto& entry = j["pool"][k];
        if (!entry.is_string())
            throw std::invalid_argument("pool entry " + std::to_string(k + 1) +
                                        " is not a formula string");
        try {
            c.pool.push_back(parse_formula(entry.get<std::string>()));
        } catch (const ParseError& e) {
            throw std::invalid_argument("pool entry " + std::to_string(k + 1) + ": " + e.what() +
                                        " at position " + std::to_string(e.position));
        }
    }
    const int n = static_cast<int>(c.pool.size());
    for (std::size_t g = 0; g < j["groups"].size(); ++g) {
        const auto& arr = j["groups"][g];
        if (!arr.is_array())
            throw std::invalid_argument("group " + std::to_string(g + 1) + " is not an array");
        Group grp;
        for (const auto& v : arr) {
            if (!v.is_number_integer())
                throw std::invalid_argument("group " + std::to_string(g + 1) +
                                            " holds a non-integer index");
            long long idx = v.get<long long>();
            if (idx < 1 || idx > n)
                throw std::invalid_argument("group " + std::to_string(g + 1) + " index " +
                                            std::to_string(idx) + " is out of range 1.." +
                                            std::to_string(n));
            grp.push_back(static_cast<int>(idx - 1));
        }
        Group norm = normalized_group(grp);
        if (norm.size() != grp.size() && warnings)
            warnings->push_back("group " + std::to_string(g + 1) +
                                ": duplicate indices collapsed");
        c.groups.push_back(std::move(norm));
    }
    return c;
}

}  // namespace cirq
