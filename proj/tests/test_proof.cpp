#include "doctest.h"

#include <string>
#include <vector>

#include "cirq/cirquent.hpp"
#include "cirq/formula.hpp"
#include "cirq/proof.hpp"
#include "cirq/rules.hpp"

using namespace cirq;

namespace {

Cirquent make(std::vector<std::string> pool, std::vector<Group> groups) {
    Cirquent c;
    for (const auto& s : pool) c.pool.push_back(parse_formula(s));
    c.groups = std::move(groups);
    return c;
}

Proof leaf(const RuleApplication& r) { return Proof{apply(r, {}), r, {}}; }

Proof step(const RuleApplication& r, Proof child) {
    Cirquent c = apply(r, {child.cirquent});
    return Proof{std::move(c), r, {std::move(child)}};
}

Proof mix(Proof left, Proof right) {
    Cirquent c = apply(rules::Mix{}, {left.cirquent, right.cirquent});
    Proof p{std::move(c), rules::Mix{}, {}};
    p.children.push_back(std::move(left));
    p.children.push_back(std::move(right));
    return p;
}

Proof or_proof_of_excluded_middle() {
    return step(rules::OrIntro{0}, leaf(rules::IdentityAxiom{parse_formula("P")}));
}

}  // namespace

TEST_CASE("a two-node proof of ~P|P checks in every system") {
    Proof p = or_proof_of_excluded_middle();
    CHECK(p.cirquent == formula_cirquent(parse_formula("~P|P")));
    for (SystemId s : {SystemId::CL5Minus, SystemId::CL5, SystemId::CCC}) {
        CheckReport r = check(s, p);
        CHECK(r.ok);
        CHECK(r.issues.empty());
    }

    ProofMetrics m = metrics(p);
    CHECK(m.size == 8);  // 4 for the axiom cirquent, 4 for the root
    CHECK(m.rule_count == 2);
    CHECK(m.max_width == 1);
    CHECK(m.rule_counts.at("IdentityAxiom") == 1);
    CHECK(m.rule_counts.at("OrIntro") == 1);

    WidthReport w = check_width_bound(p, parse_formula("~P|P"));
    CHECK(w.ok);
    CHECK(w.bound == 1);
    CHECK(w.max_width == 1);
}

TEST_CASE("the checker reports rule admission, replay, and arity problems") {
    // Contraction anywhere under CL5 is rejected.
    Proof contracted = step(
        rules::Contraction{0},
        step(rules::PoolWeakening{0, parse_formula("Q")},
             step(rules::PoolWeakening{0, parse_formula("Q")}, leaf(rules::EmptyAxiom{}))));
    CHECK(check(SystemId::CCC, contracted).ok);
    CheckReport r = check(SystemId::CL5, contracted);
    REQUIRE_FALSE(r.ok);
    CHECK(r.issues[0].diagnostic == "RULE_NOT_IN_SYSTEM");
    CHECK(r.issues[0].rule == "Contraction");
    CHECK(r.issues[0].path.empty());

    // Corrupting an inner cirquent yields a replay mismatch at that path.
    Proof broken = or_proof_of_excluded_middle();
    broken.children[0].cirquent = make({"~P", "P"}, {{0}, {1}});
    CheckReport rb = check(SystemId::CL5Minus, broken);
    REQUIRE_FALSE(rb.ok);
    bool found_mismatch = false;
    for (const CheckIssue& issue : rb.issues) {
        if (issue.diagnostic == "REPLAY_MISMATCH" && issue.path == std::vector<int>{0})
            found_mismatch = true;  // the axiom node no longer matches its rule
    }
    CHECK(found_mismatch);

    // Missing premise.
    Proof orphan{make({"A|B"}, {{0}}), rules::OrIntro{0}, {}};
    CheckReport ro = check(SystemId::CL5Minus, orphan);
    REQUIRE_FALSE(ro.ok);
    CHECK(ro.issues[0].diagnostic == "ARITY_MISMATCH");

    // Malformed cirquent inside a node.
    Proof bad = or_proof_of_excluded_middle();
    bad.children[0].cirquent.groups[0] = {0, 5};
    CheckReport rc = check(SystemId::CL5Minus, bad);
    REQUIRE_FALSE(rc.ok);
    CHECK(rc.issues[0].diagnostic == "INVALID_CIRQUENT");
}

TEST_CASE("metrics on the empty axiom") {
    Proof p = leaf(rules::EmptyAxiom{});
    ProofMetrics m = metrics(p);
    CHECK(m.size == 0);
    CHECK(m.rule_count == 1);
    CHECK(m.max_width == 0);
}

TEST_CASE("width bound flags fabricated wide nodes") {
    Proof p = or_proof_of_excluded_middle();
    p.children[0].cirquent.groups = {{0, 1}, {0}, {1}};
    WidthReport w = check_width_bound(p, parse_formula("~P|P"));
    CHECK_FALSE(w.ok);
    CHECK(w.bound == 1);
    CHECK(w.max_width == 3);
    CHECK(w.offender == std::vector<int>{0});
}

TEST_CASE("normalize drops mixes with a structureless premise") {
    // Mix with a literally empty premise: conclusion equals the other premise.
    Proof p1 = mix(leaf(rules::EmptyAxiom{}), or_proof_of_excluded_middle());
    Proof n1 = normalize(p1);
    CHECK(n1 == or_proof_of_excluded_middle());
    CHECK(metrics(n1).rule_count == 2);

    // Mix whose left premise has oformulas but no ogroups: the subtree is
    // replaced by pool weakenings, preserving the conclusion bit-exact.
    Proof bare = step(rules::PoolWeakening{0, parse_formula("Q|R")},
                      step(rules::PoolWeakening{0, parse_formula("Q")},
                           leaf(rules::EmptyAxiom{})));
    Proof p2 = mix(bare, or_proof_of_excluded_middle());
    REQUIRE(check(SystemId::CL5Minus, p2).ok);
    Proof n2 = normalize(p2);
    CHECK(n2.cirquent == p2.cirquent);
    CHECK(check(SystemId::CL5Minus, n2).ok);
    CHECK(metrics(n2).rule_count <= metrics(p2).rule_count);
    ProofMetrics m2 = metrics(n2);
    CHECK(m2.rule_counts.count("EmptyAxiom") == 0);
    CHECK(m2.rule_counts.count("Mix") == 0);
    CHECK(m2.rule_counts.at("PoolWeakening") == 2);

    // Both premises bare: everything collapses into weakenings over nothing.
    Proof p3 = mix(step(rules::PoolWeakening{0, parse_formula("A")}, leaf(rules::EmptyAxiom{})),
                   step(rules::PoolWeakening{0, parse_formula("B")}, leaf(rules::EmptyAxiom{})));
    Proof n3 = normalize(p3);
    CHECK(n3.cirquent == p3.cirquent);
    CHECK(metrics(n3).rule_counts.count("Mix") == 0);
    CHECK(check(SystemId::CCC, n3).ok);
}

TEST_CASE("normalize compresses exchange runs to minimal length") {
    // A cancelling pair of oformula swaps disappears entirely.
    Proof base = step(rules::PoolWeakening{2, parse_formula("Q")},
                      leaf(rules::IdentityAxiom{parse_formula("P")}));
    Proof noisy = step(rules::OformulaExchange{0}, step(rules::OformulaExchange{0}, base));
    Proof n = normalize(noisy);
    CHECK(n.cirquent == noisy.cirquent);
    CHECK(metrics(n).rule_counts.count("OformulaExchange") == 0);
    CHECK(metrics(n).rule_count == metrics(noisy).rule_count - 2);

    // A three-cycle reached in four swaps needs only two.
    Proof wasteful = step(
        rules::OformulaExchange{1},
        step(rules::OformulaExchange{0},
             step(rules::OformulaExchange{0}, step(rules::OformulaExchange{0}, base))));
    REQUIRE(check(SystemId::CL5Minus, wasteful).ok);
    Proof nw = normalize(wasteful);
    CHECK(nw.cirquent == wasteful.cirquent);
    CHECK(metrics(nw).rule_counts.at("OformulaExchange") == 2);
    CHECK(check(SystemId::CL5Minus, nw).ok);

    // Identity ogroup runs vanish too.
    Proof two_groups = step(rules::DuplicationDown{0}, leaf(rules::IdentityAxiom{parse_formula("P")}));
    Proof gnoisy = step(rules::OgroupExchange{0}, step(rules::OgroupExchange{0}, two_groups));
    Proof gn = normalize(gnoisy);
    CHECK(gn.cirquent == gnoisy.cirquent);
    CHECK(metrics(gn).rule_counts.count("OgroupExchange") == 0);
    CHECK(check(SystemId::CL5, gn).ok);

    CHECK_THROWS_AS(normalize(Proof{make({"A|B"}, {{0}}), rules::OrIntro{0}, {}}),
                    std::invalid_argument);
}

TEST_CASE("proof JSON round-trips") {
    Proof p = mix(or_proof_of_excluded_middle(),
                  step(rules::PoolWeakening{0, parse_formula("Q")}, leaf(rules::EmptyAxiom{})));
    nlohmann::json j = proof_to_json(p);
    CHECK(j.contains("cirquent"));
    CHECK(j["rule"] == nlohmann::json({{"rule", "Mix"}}));
    CHECK(j["premises"].size() == 2);
    Proof back = proof_from_json(j);
    CHECK(back == p);
    CHECK(proof_to_json(back) == j);

    CHECK_THROWS_AS(proof_from_json(nlohmann::json::array()), std::invalid_argument);
    CHECK_THROWS_AS(proof_from_json({{"rule", {{"rule", "Mix"}}}}), std::invalid_argument);
}
