#include "cirq/proof.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace cirq {

namespace {

void check_walk(SystemId system, const Proof& node, std::vector<int>& path,
                std::vector<CheckIssue>& issues) {
    auto report = [&](std::string diagnostic, std::string message) {
        issues.push_back({path, rule_name(node.rule), std::move(diagnostic), std::move(message)});
    };
    try {
        validate(node.cirquent);
    } catch (const std::invalid_argument& e) {
        report("INVALID_CIRQUENT", e.what());
    }
    if (!rule_admitted(system, node.rule))
        report("RULE_NOT_IN_SYSTEM",
               rule_name(node.rule) + " is not admitted by " + system_name(system));
    std::vector<Cirquent> premises;
    premises.reserve(node.children.size());
    bool premises_valid = true;
    for (const Proof& child : node.children) {
        premises.push_back(child.cirquent);
        try {
            validate(child.cirquent);
        } catch (const std::invalid_argument&) {
            premises_valid = false;  // reported at the child's own path below
        }
    }
    if (premises_valid) {
        try {
            Cirquent derived = cirq::apply(node.rule, premises);
            if (derived != node.cirquent)
                report("REPLAY_MISMATCH", "rule derives \"" + render_text(derived) +
                                              "\" but node holds \"" + render_text(node.cirquent) +
                                              "\"");
        } catch (const RuleError& e) {
            report(e.code, e.what());
        }
    }
    for (std::size_t k = 0; k < node.children.size(); ++k) {
        path.push_back(static_cast<int>(k));
        check_walk(system, node.children[k], path, issues);
        path.pop_back();
    }
}

}  // namespace

CheckReport check(SystemId system, const Proof& p) {
    CheckReport report;
    std::vector<int> path;
    check_walk(system, p, path, report.issues);
    report.ok = report.issues.empty();
    return report;
}

namespace {

void metrics_walk(const Proof& node, ProofMetrics& m) {
    m.size += cirquent_size(node.cirquent);
    m.rule_count += 1;
    m.rule_counts[rule_name(node.rule)] += 1;
    m.max_width = std::max(m.max_width, static_cast<int>(node.cirquent.groups.size()));
    for (const Proof& child : node.children) metrics_walk(child, m);
}

}  // namespace

ProofMetrics metrics(const Proof& p) {
    ProofMetrics m;
    metrics_walk(p, m);
    return m;
}

namespace {

bool width_walk(const Proof& node, int bound, std::vector<int>& path, WidthReport& report) {
    report.max_width = std::max(report.max_width, static_cast<int>(node.cirquent.groups.size()));
    if (static_cast<int>(node.cirquent.groups.size()) > bound) {
        report.offender = path;
        return false;
    }
    for (std::size_t k = 0; k < node.children.size(); ++k) {
        path.push_back(static_cast<int>(k));
        bool ok = width_walk(node.children[k], bound, path, report);
        path.pop_back();
        if (!ok) return false;
    }
    return true;
}

void max_width_walk(const Proof& node, int& w) {
    w = std::max(w, static_cast<int>(node.cirquent.groups.size()));
    for (const Proof& child : node.children) max_width_walk(child, w);
}

}  // namespace

WidthReport check_width_bound(const Proof& p, const Formula& root_formula) {
    WidthReport report;
    report.bound = positive_occurrence_count(root_formula);
    std::vector<int> path;
    report.ok = width_walk(p, report.bound, path, report);
    if (!report.ok) max_width_walk(p, report.max_width);  // finish the scan for the report
    return report;
}

namespace {

// (a) Any Mix premise without ogroups contributes only arc-less oformulas;
// its whole subtree is replaced by pool weakenings on top of the sibling.
Proof eliminate_empty(const Proof& node) {
    Proof out{node.cirquent, node.rule, {}};
    out.children.reserve(node.children.size());
    for (const Proof& child : node.children) out.children.push_back(eliminate_empty(child));

    if (!std::holds_alternative<rules::Mix>(node.rule)) return out;

    const bool left_bare = out.children[0].cirquent.groups.empty();
    const bool right_bare = out.children[1].cirquent.groups.empty();
    if (!left_bare && !right_bare) return out;

    // Keep the premise that still has structure; if both are bare, keep the
    // right one and weaken the left pool in.
    const bool keep_right = left_bare;
    Proof kept = std::move(out.children[keep_right ? 1 : 0]);
    const std::vector<Formula>& extra = node.children[keep_right ? 0 : 1].cirquent.pool;
    const int base = keep_right ? 0 : static_cast<int>(kept.cirquent.pool.size());
    for (std::size_t k = 0; k < extra.size(); ++k) {
        rules::PoolWeakening w{base + static_cast<int>(k), extra[k]};
        Cirquent next = cirq::apply(w, {kept.cirquent});
        kept = Proof{std::move(next), w, {std::move(kept)}};
    }
    if (kept.cirquent != node.cirquent)
        throw std::logic_error("normalize: mix elimination changed the conclusion");
    return kept;
}

// (b) Rewrite maximal exchange runs into minimal transposition sequences.
Proof compress_exchanges(const Proof& node) {
    if (!is_exchange(node.rule)) {
        Proof out{node.cirquent, node.rule, {}};
        out.children.reserve(node.children.size());
        for (const Proof& child : node.children) out.children.push_back(compress_exchanges(child));
        return out;
    }

    // Collect the run top-down, then process everything below it.
    std::vector<const RuleApplication*> run;
    const Proof* cur = &node;
    while (is_exchange(cur->rule)) {
        run.push_back(&cur->rule);
        cur = &cur->children[0];
    }
    Proof base = compress_exchanges(*cur);

    // Net permutations from the base cirquent to the run's conclusion:
    // arr[q] = base position currently sitting at q.
    const int n = static_cast<int>(base.cirquent.pool.size());
    const int m = static_cast<int>(base.cirquent.groups.size());
    std::vector<int> pool_arr(n), group_arr(m);
    std::iota(pool_arr.begin(), pool_arr.end(), 0);
    std::iota(group_arr.begin(), group_arr.end(), 0);
    for (auto it = run.rbegin(); it != run.rend(); ++it) {
        if (const auto* e = std::get_if<rules::OformulaExchange>(*it))
            std::swap(pool_arr[e->i], pool_arr[e->i + 1]);
        else if (const auto* g = std::get_if<rules::OgroupExchange>(*it))
            std::swap(group_arr[g->i], group_arr[g->i + 1]);
    }
    std::vector<int> sigma(n), tau(m);
    for (int q = 0; q < n; ++q) sigma[pool_arr[q]] = q;
    for (int q = 0; q < m; ++q) tau[group_arr[q]] = q;

    Proof out = std::move(base);
    for (const RuleApplication& r : transposition_chain(std::move(sigma), std::move(tau))) {
        Cirquent next = cirq::apply(r, {out.cirquent});
        out = Proof{std::move(next), r, {std::move(out)}};
    }
    if (out.cirquent != node.cirquent)
        throw std::logic_error("normalize: exchange compression changed the conclusion");
    return out;
}

}  // namespace

Proof normalize(const Proof& p) {
    CheckReport before = check(SystemId::CCC, p);
    if (!before.ok)
        throw std::invalid_argument("normalize: input proof fails checking: " +
                                    (before.issues.empty() ? std::string("unknown")
                                                           : before.issues.front().message));
    Proof out = compress_exchanges(eliminate_empty(p));
    if (out.cirquent != p.cirquent)
        throw std::logic_error("normalize: root cirquent changed");
    CheckReport after = check(SystemId::CCC, out);
    if (!after.ok) throw std::logic_error("normalize: output fails re-checking");
    assert(metrics(out).rule_count <= metrics(p).rule_count);
    return out;
}

nlohmann::json proof_to_json(const Proof& p) {
    nlohmann::json j;
    j["cirquent"] = cirquent_to_json(p.cirquent);
    j["rule"] = rule_to_json(p.rule);
    j["premises"] = nlohmann::json::array();
    for (const Proof& child : p.children) j["premises"].push_back(proof_to_json(child));
    return j;
}

Proof proof_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("cirquent") || !j.contains("rule"))
        throw std::invalid_argument(
            "proof JSON must be an object with \"cirquent\" and \"rule\"");
    Proof p;
    p.cirquent = cirquent_from_json(j["cirquent"]);
    p.rule = rule_from_json(j["rule"]);
    if (j.contains("premises")) {
        if (!j["premises"].is_array())
            throw std::invalid_argument("proof JSON \"premises\" must be an array");
        for (const auto& child : j["premises"]) p.children.push_back(proof_from_json(child));
    }
    return p;
}

}  // namespace cirq
