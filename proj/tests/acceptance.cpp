// Acceptance suite: one end-to-end behavioral criterion per line of output.
// Each criterion prints exactly one PASS/FAIL line (with its wall time); the
// process exits nonzero when any criterion fails.  Unlike the unit tests,
// everything here goes through the public headers only, at the scale the
// toolkit is meant to handle on a single desk machine.

#include <sys/wait.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cirq/cirquent.hpp"
#include "cirq/decide.hpp"
#include "cirq/formula.hpp"
#include "cirq/instances.hpp"
#include "cirq/oracle.hpp"
#include "cirq/proof.hpp"
#include "cirq/reduce.hpp"
#include "cirq/rules.hpp"
#include "cirq/search.hpp"
#include "support.hpp"

namespace {

using namespace cirq;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Harness
// ---------------------------------------------------------------------------

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

class Checker {
public:
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        ++failures_;
        if (problems_.size() < 6) problems_.push_back(what);
    }
    bool ok() const { return failures_ == 0; }
    long failures() const { return failures_; }
    const std::vector<std::string>& problems() const { return problems_; }

private:
    long failures_ = 0;
    std::vector<std::string> problems_;
};

struct Tally {
    int total = 0;
    int passed = 0;
};

void run_criterion(Tally& tally, int number, const std::string& title,
                   const std::function<void(Checker&)>& body) {
    Checker check;
    Stopwatch watch;
    try {
        body(check);
    } catch (const std::exception& e) {
        check.expect(false, std::string("unhandled exception: ") + e.what());
    }
    const double secs = watch.seconds();
    ++tally.total;
    if (check.ok()) {
        ++tally.passed;
        std::printf("PASS criterion %d: %s (%.2fs)\n", number, title.c_str(), secs);
    } else {
        std::printf("FAIL criterion %d: %s (%.2fs)\n", number, title.c_str(), secs);
        for (const std::string& p : check.problems()) std::printf("       - %s\n", p.c_str());
        if (check.failures() > static_cast<long>(check.problems().size()))
            std::printf("       - (%ld further failed expectations suppressed)\n",
                        check.failures() - static_cast<long>(check.problems().size()));
    }
    std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// Shared state between criteria
// ---------------------------------------------------------------------------

// Every proof the duplication-free searcher produces anywhere in this run is
// pushed through the ogroup-width bound; criterion 5 reports the ledger.
struct WidthLedger {
    long checked = 0;
    long violations = 0;
    std::string first_violation;

    void record(const Formula& goal, const Proof& p) {
        WidthReport r = check_width_bound(p, goal);
        ++checked;
        if (!r.ok) {
            ++violations;
            if (first_violation.empty())
                first_violation = "width " + std::to_string(r.max_width) + " exceeds bound " +
                                  std::to_string(r.bound) + " proving " + render_formula(goal);
        }
    }
};

struct Shared {
    std::vector<Formula> two_atom_corpus;          // atoms {P,Q}, length <= 9
    std::vector<std::uint8_t> dupfree_outcome;     // criterion 4 fills, 5 compares
    WidthLedger widths;

    const std::vector<Formula>& corpus() {
        if (two_atom_corpus.empty()) {
            testutil::FormulaEnumerator en({"P", "Q"});
            en.for_each_up_to(9, [&](const Formula& f) { two_atom_corpus.push_back(f); });
        }
        return two_atom_corpus;
    }
};

std::string cirq_binary() {
    if (const char* env = std::getenv("CIRQ_BIN")) return env;
    return "./cirq";
}

// Runs a shell command, returns its stdout; exit status via *status.
std::string capture_stdout(const std::string& cmd, int* status) {
    std::string out;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        *status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int rc = pclose(pipe);
    *status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return out;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

// ---------------------------------------------------------------------------
// Criterion 1: the worked sharing example and every displayed rule application
// ---------------------------------------------------------------------------

Cirquent make_cirquent(const std::vector<std::string>& pool, std::vector<Group> groups) {
    Cirquent c;
    for (const std::string& s : pool) c.pool.push_back(parse_formula(s));
    c.groups = std::move(groups);
    validate(c);
    return c;
}

void criterion_figures(Checker& check) {
    Stopwatch watch;

    // The worked sharing example: pool A, B, A, D with B shared between the
    // first two ogroups.
    const Cirquent example = make_cirquent({"A", "B", "A", "D"}, {{0, 1}, {1, 2}, {3}});
    check.expect(render_text(example) == "A, B, A, D | {1,2} {2,3} {4}",
                 "worked example renders as 'A, B, A, D | {1,2} {2,3} {4}', got '" +
                     render_text(example) + "'");
    check.expect(merge_ogroups(example, 0) ==
                     make_cirquent({"A", "B", "A", "D"}, {{0, 1, 2}, {3}}),
                 "merging the first two ogroups of the worked example");
    check.expect(merge_oformulas(example, 0, parse_formula("E")) ==
                     make_cirquent({"E", "A", "D"}, {{0}, {0, 1}, {2}}),
                 "merging the first two oformulas of the worked example into E");

    struct Fixture {
        std::string what;
        RuleApplication rule;
        std::vector<Cirquent> premises;
        Cirquent conclusion;
    };

    const std::vector<Fixture> fixtures = {
        {"empty axiom derives the empty cirquent", rules::EmptyAxiom{}, {}, empty_cirquent()},
        {"identity axiom derives ~F, F sharing one ogroup",
         rules::IdentityAxiom{parse_formula("F")},
         {},
         make_cirquent({"~F", "F"}, {{0, 1}})},
        {"mix places the two premise cirquents side by side",
         rules::Mix{},
         {make_cirquent({"F", "F"}, {{0, 1}}),
          make_cirquent({"E", "G"}, {{0}, {0, 1}, {1}})},
         make_cirquent({"F", "F", "E", "G"}, {{0, 1}, {2}, {2, 3}, {3}})},
        {"oformula exchange swaps adjacent oformulas, arcs following",
         rules::OformulaExchange{1},
         {make_cirquent({"E", "F", "G"}, {{0, 1}, {1}, {2}})},
         make_cirquent({"E", "G", "F"}, {{0, 2}, {2}, {1}})},
        {"ogroup exchange swaps adjacent ogroups",
         rules::OgroupExchange{0},
         {make_cirquent({"H", "I", "J"}, {{0, 1}, {1}, {2}})},
         make_cirquent({"H", "I", "J"}, {{1}, {0, 1}, {2}})},
        {"ogroup weakening adds one arc to an existing ogroup",
         rules::OgroupWeakening{0, 1},
         {make_cirquent({"E", "F"}, {{0}, {0, 1}})},
         make_cirquent({"E", "F"}, {{0, 1}, {0, 1}})},
        {"pool weakening inserts an arc-less oformula",
         rules::PoolWeakening{1, parse_formula("F")},
         {make_cirquent({"E", "G"}, {{0, 1}})},
         make_cirquent({"E", "F", "G"}, {{0, 2}})},
        {"downward duplication splits an ogroup into two identical copies",
         rules::DuplicationDown{0},
         {make_cirquent({"E", "F", "G"}, {{0, 1}, {2}})},
         make_cirquent({"E", "F", "G"}, {{0, 1}, {0, 1}, {2}})},
        {"upward duplication merges two identical adjacent ogroups",
         rules::DuplicationUp{0},
         {make_cirquent({"E", "F", "G"}, {{0, 1}, {0, 1}, {2}})},
         make_cirquent({"E", "F", "G"}, {{0, 1}, {2}})},
        {"contraction merges two identical adjacent oformulas",
         rules::Contraction{1},
         {make_cirquent({"E", "F", "F", "G"}, {{0}, {0, 1}, {2, 3}, {3}})},
         make_cirquent({"E", "F", "G"}, {{0}, {0, 1}, {1, 2}, {2}})},
        {"disjunction introduction merges two oformulas into their disjunction",
         rules::OrIntro{1},
         {make_cirquent({"E", "F", "G"}, {{0}, {0, 1}, {2}})},
         make_cirquent({"E", "F|G"}, {{0}, {0, 1}, {1}})},
        {"disjunction introduction keeps every arc of either disjunct",
         rules::OrIntro{1},
         {make_cirquent({"E", "F", "G", "H"}, {{0}, {0, 1, 2}, {1, 2, 3}, {3}})},
         make_cirquent({"E", "F|G", "H"}, {{0}, {0, 1}, {1, 2}, {2}})},
        {"conjunction introduction merges the paired ogroups",
         rules::AndIntro{1},
         {make_cirquent({"E", "F", "G"}, {{0}, {0, 1}, {2}})},
         make_cirquent({"E", "F&G"}, {{0}, {0, 1}})},
        {"conjunction introduction unions the arcs of each paired ogroup",
         rules::AndIntro{1},
         {make_cirquent({"E", "F", "G", "H"}, {{0}, {0, 1, 3}, {0, 2, 3}, {3}})},
         make_cirquent({"E", "F&G", "H"}, {{0}, {0, 1, 2}, {2}})},
    };

    for (const Fixture& fx : fixtures) {
        try {
            const Cirquent got = cirq::apply(fx.rule, fx.premises);
            check.expect(got == fx.conclusion,
                         fx.what + ": expected " + render_text(fx.conclusion) + ", got " +
                             render_text(got));
        } catch (const std::exception& e) {
            check.expect(false, fx.what + ": apply threw: " + e.what());
        }
    }

    check.expect(watch.seconds() < 1.0, "runtime under one second");
}

// ---------------------------------------------------------------------------
// Criterion 2: the full-calculus decider against the truth-table oracle
// ---------------------------------------------------------------------------

void criterion_classical_corpus(Checker& check) {
    Stopwatch watch;
    testutil::FormulaEnumerator en({"P", "Q", "R"});
    long total = 0;
    long tautologies = 0;
    long mismatches = 0;
    std::string first_mismatch;
    en.for_each_up_to(12, [&](const Formula& f) {
        ++total;
        const bool dec = decide_ccc(f).provable;
        const bool oracle = brute_force_tautology(f);
        if (dec != oracle) {
            ++mismatches;
            if (first_mismatch.empty()) first_mismatch = render_formula(f);
        }
        if (oracle) ++tautologies;
    });
    check.expect(total == 64501134,
                 "corpus holds 64,501,134 formulas, saw " + std::to_string(total));
    check.expect(mismatches == 0, std::to_string(mismatches) +
                                      " disagreements with the truth-table oracle, first on " +
                                      first_mismatch);
    check.expect(tautologies > 0, "corpus contains tautologies");
    check.expect(watch.seconds() < 120.0, "runtime under two minutes");
}

// ---------------------------------------------------------------------------
// Criterion 3: contraction-free search against the binary-tautology decider
// ---------------------------------------------------------------------------

void criterion_search_vs_decider(Checker& check, Shared& shared) {
    Stopwatch watch;
    const std::vector<Formula>& corpus = shared.corpus();
    check.expect(corpus.size() == 240164,
                 "corpus holds 240,164 formulas, saw " + std::to_string(corpus.size()));

    long proved = 0, refuted = 0, exceeded = 0, disagreements = 0, bad_proofs = 0;
    std::string first_disagreement;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Formula& f = corpus[i];
        const SearchResult r = prove(SystemId::CL5, f);
        const bool dec = decide_cl5(f).provable;
        switch (r.outcome) {
            case SearchOutcome::Proved: {
                ++proved;
                if (!dec) {
                    ++disagreements;
                    if (first_disagreement.empty())
                        first_disagreement = render_formula(f) + " (search proved, decider rejects)";
                }
                // Spot-check the elaborated proofs end to end.
                if (i % 97 == 0) {
                    if (!r.proof || !cirq::check(SystemId::CL5, *r.proof).ok ||
                        r.proof->cirquent != formula_cirquent(f))
                        ++bad_proofs;
                }
                break;
            }
            case SearchOutcome::Refuted:
                ++refuted;
                if (dec) {
                    ++disagreements;
                    if (first_disagreement.empty())
                        first_disagreement = render_formula(f) + " (search refuted, decider accepts)";
                }
                break;
            case SearchOutcome::BudgetExceeded:
                ++exceeded;
                break;
        }
    }
    check.expect(disagreements == 0, std::to_string(disagreements) +
                                         " search/decider disagreements, first on " +
                                         first_disagreement);
    check.expect(bad_proofs == 0,
                 std::to_string(bad_proofs) + " sampled proofs failed re-checking");
    check.expect(proved > 0 && refuted > 0, "both outcomes exercised (proved=" +
                                                std::to_string(proved) + ", refuted=" +
                                                std::to_string(refuted) + ")");
    check.expect(watch.seconds() < 600.0, "runtime under ten minutes");
}

// ---------------------------------------------------------------------------
// Criterion 4: the duplication-free searcher decides the whole corpus
// ---------------------------------------------------------------------------

void criterion_dupfree_decides(Checker& check, Shared& shared) {
    Stopwatch watch;
    const std::vector<Formula>& corpus = shared.corpus();
    shared.dupfree_outcome.assign(corpus.size(), 0);

    long proved = 0, refuted = 0, exceeded = 0, inclusion_breaks = 0;
    std::string first_break;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Formula& f = corpus[i];
        const SearchResult r = prove(SystemId::CL5Minus, f);
        shared.dupfree_outcome[i] = static_cast<std::uint8_t>(r.outcome);
        switch (r.outcome) {
            case SearchOutcome::Proved: {
                ++proved;
                if (r.proof) shared.widths.record(f, *r.proof);
                // Provable duplication-free implies provable in the larger
                // systems, semantically decided.
                if (!decide_cl5(f).provable || !decide_ccc(f).provable) {
                    ++inclusion_breaks;
                    if (first_break.empty()) first_break = render_formula(f);
                }
                break;
            }
            case SearchOutcome::Refuted:
                ++refuted;
                break;
            case SearchOutcome::BudgetExceeded:
                ++exceeded;
                break;
        }
    }
    check.expect(exceeded == 0,
                 std::to_string(exceeded) + " formulas exhausted the default budgets");
    check.expect(inclusion_breaks == 0,
                 std::to_string(inclusion_breaks) +
                     " provable formulas rejected by a semantic decider, first on " + first_break);
    check.expect(proved > 0 && refuted > 0, "both outcomes exercised (proved=" +
                                                std::to_string(proved) + ", refuted=" +
                                                std::to_string(refuted) + ")");

    const auto outcome_of = [](const std::string& text) {
        return prove(SystemId::CL5Minus, parse_formula(text)).outcome;
    };
    check.expect(outcome_of("~P|P") == SearchOutcome::Proved, "~P|P is proved");
    check.expect(outcome_of("P|P") == SearchOutcome::Refuted,
                 "P|P is refuted without contraction");
    check.expect(outcome_of("~P|(P&P)") == SearchOutcome::Refuted,
                 "~P|(P&P) is refuted without contraction");
    check.expect(watch.seconds() < 600.0, "runtime under ten minutes");
}

// ---------------------------------------------------------------------------
// Criterion 5: the ogroup-width bound and the width prune's transparency
// ---------------------------------------------------------------------------

void criterion_width_bound(Checker& check, Shared& shared) {
    Stopwatch watch;
    const std::vector<Formula>& corpus = shared.corpus();
    check.expect(shared.dupfree_outcome.size() == corpus.size(),
                 "baseline outcomes recorded by the previous criterion");

    long changed = 0;
    std::string first_change;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Formula& f = corpus[i];
        SearchBudget doubled;
        const SearchBudget defaults = resolve_budget(SystemId::CL5Minus, f);
        doubled.max_width_override = 2 * defaults.max_width_override.value();
        const SearchResult r = prove(SystemId::CL5Minus, f, doubled);
        if (r.proof) shared.widths.record(f, *r.proof);
        if (!shared.dupfree_outcome.empty() &&
            r.outcome != static_cast<SearchOutcome>(shared.dupfree_outcome[i])) {
            ++changed;
            if (first_change.empty()) first_change = render_formula(f);
        }
    }
    check.expect(changed == 0, std::to_string(changed) +
                                   " outcomes changed under a doubled width cap, first on " +
                                   first_change);
    check.expect(shared.widths.checked > 0, "width ledger saw proofs");
    check.expect(shared.widths.violations == 0,
                 std::to_string(shared.widths.violations) +
                     " proofs exceeded the positive-occurrence width bound: " +
                     shared.widths.first_violation);
    check.expect(watch.seconds() < 600.0, "runtime under ten minutes");
}

// ---------------------------------------------------------------------------
// Criterion 6: normalization of randomly padded proofs
// ---------------------------------------------------------------------------

Formula random_padding_literal(std::mt19937_64& rng) {
    static const std::vector<std::string> atoms = {"A", "B", "C", "P", "Q"};
    std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
    return (rng() & 1) ? Formula::atom(atoms[pick(rng)]) : Formula::neg_atom(atoms[pick(rng)]);
}

Proof make_identity_leaf(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(1, 5);
    Formula f = testutil::random_formula(rng, len(rng), {"A", "B", "C", "P", "Q"});
    rules::IdentityAxiom ax{f};
    return Proof{cirq::apply(ax, {}), ax, {}};
}

// Grows a valid proof by trying randomly parameterized rules forward; every
// node is built through apply, so the result always re-checks.
Proof random_valid_proof(std::mt19937_64& rng, SystemId system, int steps) {
    Proof p = make_identity_leaf(rng);
    std::uniform_int_distribution<int> percent(0, 99);
    for (int s = 0; s < steps; ++s) {
        const Cirquent& c = p.cirquent;
        const int pool = static_cast<int>(c.pool.size());
        const int groups = static_cast<int>(c.groups.size());

        if (percent(rng) < 20) {
            Proof side = make_identity_leaf(rng);
            Cirquent conclusion = cirq::apply(rules::Mix{}, {p.cirquent, side.cirquent});
            Proof mixed{std::move(conclusion), rules::Mix{}, {}};
            mixed.children.push_back(std::move(p));
            mixed.children.push_back(std::move(side));
            p = std::move(mixed);
            continue;
        }

        std::vector<RuleApplication> candidates;
        const auto pool_index = [&] {
            std::uniform_int_distribution<int> d(0, pool - 2);
            return d(rng);
        };
        const auto group_index = [&] {
            std::uniform_int_distribution<int> d(0, groups - 2);
            return d(rng);
        };
        if (pool >= 2) {
            candidates.push_back(rules::OformulaExchange{pool_index()});
            candidates.push_back(rules::OrIntro{pool_index()});
            candidates.push_back(rules::AndIntro{pool_index()});
            if (system == SystemId::CCC) candidates.push_back(rules::Contraction{pool_index()});
        }
        if (groups >= 2) {
            candidates.push_back(rules::OgroupExchange{group_index()});
            if (system != SystemId::CL5Minus) candidates.push_back(rules::DuplicationUp{group_index()});
        }
        if (groups >= 1 && system != SystemId::CL5Minus) {
            std::uniform_int_distribution<int> d(0, groups - 1);
            candidates.push_back(rules::DuplicationDown{d(rng)});
        }
        if (groups >= 1 && pool >= 1) {
            std::uniform_int_distribution<int> dg(0, groups - 1);
            std::uniform_int_distribution<int> dp(0, pool - 1);
            candidates.push_back(rules::OgroupWeakening{dg(rng), dp(rng)});
        }
        {
            std::uniform_int_distribution<int> d(0, pool);
            candidates.push_back(rules::PoolWeakening{d(rng), random_padding_literal(rng)});
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
        for (const RuleApplication& r : candidates) {
            try {
                Cirquent conclusion = cirq::apply(r, {c});
                Proof next{std::move(conclusion), r, {}};
                next.children.push_back(std::move(p));
                p = std::move(next);
                break;
            } catch (const RuleError&) {
                continue;  // side condition failed; try the next candidate
            }
        }
    }
    return p;
}

std::vector<Proof*> collect_nodes(Proof& p) {
    std::vector<Proof*> nodes;
    std::vector<Proof*> stack = {&p};
    while (!stack.empty()) {
        Proof* n = stack.back();
        stack.pop_back();
        nodes.push_back(n);
        for (Proof& ch : n->children) stack.push_back(&ch);
    }
    return nodes;
}

// Wraps `node` in a pair of identical exchange applications (a net no-op).
void pad_exchange_pair(std::mt19937_64& rng, Proof& node) {
    const Cirquent c = node.cirquent;
    const bool can_pool = c.pool.size() >= 2;
    const bool can_group = c.groups.size() >= 2;
    if (!can_pool && !can_group) return;
    const bool use_pool = can_pool && (!can_group || (rng() & 1));
    RuleApplication r;
    if (use_pool) {
        std::uniform_int_distribution<int> d(0, static_cast<int>(c.pool.size()) - 2);
        r = rules::OformulaExchange{d(rng)};
    } else {
        std::uniform_int_distribution<int> d(0, static_cast<int>(c.groups.size()) - 2);
        r = rules::OgroupExchange{d(rng)};
    }
    Proof inner = std::move(node);
    Proof middle{cirq::apply(r, {c}), r, {}};
    middle.children.push_back(std::move(inner));
    node = Proof{c, r, {}};
    node.children.push_back(std::move(middle));
}

// Mixes `node` with a freshly derived empty cirquent; the conclusion is
// unchanged, so this works at any position in the tree.
void pad_empty_mix(std::mt19937_64& rng, Proof& node) {
    const Cirquent c = node.cirquent;
    Proof empty{empty_cirquent(), rules::EmptyAxiom{}, {}};
    Proof inner = std::move(node);
    node = Proof{c, rules::Mix{}, {}};
    if (rng() & 1) {
        node.children.push_back(std::move(empty));
        node.children.push_back(std::move(inner));
    } else {
        node.children.push_back(std::move(inner));
        node.children.push_back(std::move(empty));
    }
}

// Mixes the root with a premise holding arc-less oformulas over no ogroups;
// the root cirquent gains those oformulas.
void pad_arcless_mix(std::mt19937_64& rng, Proof& root) {
    std::uniform_int_distribution<int> count(1, 3);
    Proof dummy{empty_cirquent(), rules::EmptyAxiom{}, {}};
    const int extra = count(rng);
    for (int j = 0; j < extra; ++j) {
        rules::PoolWeakening w{j, random_padding_literal(rng)};
        Cirquent grown = cirq::apply(w, {dummy.cirquent});
        Proof next{std::move(grown), w, {}};
        next.children.push_back(std::move(dummy));
        dummy = std::move(next);
    }
    Cirquent conclusion = cirq::apply(rules::Mix{}, {root.cirquent, dummy.cirquent});
    Proof inner = std::move(root);
    root = Proof{std::move(conclusion), rules::Mix{}, {}};
    root.children.push_back(std::move(inner));
    root.children.push_back(std::move(dummy));
}

// Stacks a run of random (not necessarily cancelling) exchanges on the root.
void pad_exchange_run(std::mt19937_64& rng, Proof& root, int length) {
    for (int s = 0; s < length; ++s) {
        const Cirquent c = root.cirquent;
        const bool can_pool = c.pool.size() >= 2;
        const bool can_group = c.groups.size() >= 2;
        if (!can_pool && !can_group) return;
        const bool use_pool = can_pool && (!can_group || (rng() & 1));
        RuleApplication r;
        if (use_pool) {
            std::uniform_int_distribution<int> d(0, static_cast<int>(c.pool.size()) - 2);
            r = rules::OformulaExchange{d(rng)};
        } else {
            std::uniform_int_distribution<int> d(0, static_cast<int>(c.groups.size()) - 2);
            r = rules::OgroupExchange{d(rng)};
        }
        Proof inner = std::move(root);
        root = Proof{cirq::apply(r, {c}), r, {}};
        root.children.push_back(std::move(inner));
    }
}

int count_rule(const Proof& p, const std::string& name) {
    int n = rule_name(p.rule) == name ? 1 : 0;
    for (const Proof& ch : p.children) n += count_rule(ch, name);
    return n;
}

int count_dummy_mixes(const Proof& p) {
    int n = 0;
    if (rule_name(p.rule) == "Mix")
        for (const Proof& ch : p.children)
            if (ch.cirquent.groups.empty()) ++n;
    for (const Proof& ch : p.children) n += count_dummy_mixes(ch);
    return n;
}

// Checks that every maximal run of consecutive exchange nodes stays within
// the inversion bound for its kind: at most m(m-1)/2 oformula swaps over an
// m-oformula pool and likewise for ogroups.
void check_exchange_runs(Checker& check, const Proof& p, bool parent_was_exchange) {
    const bool here = is_exchange(p.rule);
    if (here && !parent_was_exchange) {
        int pool_swaps = 0, group_swaps = 0;
        const Proof* n = &p;
        while (is_exchange(n->rule)) {
            if (rule_name(n->rule) == "OformulaExchange")
                ++pool_swaps;
            else
                ++group_swaps;
            if (n->children.size() != 1) break;
            n = &n->children.front();
        }
        const long mp = static_cast<long>(p.cirquent.pool.size());
        const long mg = static_cast<long>(p.cirquent.groups.size());
        check.expect(pool_swaps <= mp * (mp - 1) / 2,
                     "an exchange run uses " + std::to_string(pool_swaps) +
                         " oformula swaps over a pool of " + std::to_string(mp));
        check.expect(group_swaps <= mg * (mg - 1) / 2,
                     "an exchange run uses " + std::to_string(group_swaps) +
                         " ogroup swaps over " + std::to_string(mg) + " ogroups");
    }
    for (const Proof& ch : p.children) check_exchange_runs(check, ch, here);
}

void criterion_normalizer(Checker& check) {
    Stopwatch watch;
    std::mt19937_64 rng(20260814);
    const SystemId systems[] = {SystemId::CL5Minus, SystemId::CL5, SystemId::CCC};
    std::uniform_int_distribution<int> steps(2, 10);
    std::uniform_int_distribution<int> pad_rounds(2, 6);
    std::uniform_int_distribution<int> pad_kind(0, 3);
    std::uniform_int_distribution<int> run_length(1, 4);

    for (int t = 0; t < 200; ++t) {
        const SystemId system = systems[t % 3];
        Proof padded = random_valid_proof(rng, system, steps(rng));
        const int rounds = pad_rounds(rng);
        for (int r = 0; r < rounds; ++r) {
            switch (pad_kind(rng)) {
                case 0: {
                    std::vector<Proof*> nodes = collect_nodes(padded);
                    std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
                    pad_exchange_pair(rng, *nodes[pick(rng)]);
                    break;
                }
                case 1: {
                    std::vector<Proof*> nodes = collect_nodes(padded);
                    std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
                    pad_empty_mix(rng, *nodes[pick(rng)]);
                    break;
                }
                case 2:
                    pad_arcless_mix(rng, padded);
                    break;
                case 3:
                    pad_exchange_run(rng, padded, run_length(rng));
                    break;
            }
        }
        check.expect(count_rule(padded, "EmptyAxiom") > 0 || count_dummy_mixes(padded) > 0 ||
                         count_rule(padded, "OformulaExchange") +
                                 count_rule(padded, "OgroupExchange") >
                             0,
                     "trial " + std::to_string(t) + " injected some padding");

        Proof normalized;
        try {
            normalized = normalize(padded);
        } catch (const std::exception& e) {
            check.expect(false,
                         "trial " + std::to_string(t) + ": normalize threw: " + e.what());
            continue;
        }
        check.expect(normalized.cirquent == padded.cirquent,
                     "trial " + std::to_string(t) + ": root cirquent preserved");
        check.expect(count_rule(normalized, "EmptyAxiom") == 0,
                     "trial " + std::to_string(t) + ": no empty-axiom nodes survive");
        check.expect(count_dummy_mixes(normalized) == 0,
                     "trial " + std::to_string(t) + ": no mix keeps an ogroup-less premise");
        check.expect(metrics(normalized).rule_count <= metrics(padded).rule_count,
                     "trial " + std::to_string(t) + ": rule count never increases");
        check.expect(cirq::check(system, normalized).ok,
                     "trial " + std::to_string(t) + ": normalized proof re-checks");
        check_exchange_runs(check, normalized, false);
    }
    check.expect(watch.seconds() < 60.0, "runtime under one minute");
}

// ---------------------------------------------------------------------------
// Criterion 7: the vertex-cover generator against brute force
// ---------------------------------------------------------------------------

void criterion_vertex_cover(Checker& check, Shared& shared) {
    Stopwatch watch;
    const std::vector<std::string> names = {"a", "b", "c"};
    int checked = 0;
    long mismatches = 0;
    std::string first_mismatch;
    for (int n = 2; n <= 3; ++n) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(names[i], names[j]);
        for (unsigned mask = 1; mask < (1u << pairs.size()); ++mask) {
            Graph g;
            g.vertices.assign(names.begin(), names.begin() + n);
            for (std::size_t e = 0; e < pairs.size(); ++e)
                if ((mask >> e) & 1u) g.edges.push_back(pairs[e]);
            for (int k = 1; k <= 3; ++k) {
                const VCInstance inst{g, k};
                const bool has_cover = brute_force_vc(inst).has_value();
                const bool provable = decide_cl5(vc_to_cl5minus(inst)).provable;
                if (has_cover != provable) {
                    ++mismatches;
                    if (first_mismatch.empty())
                        first_mismatch = std::to_string(g.edges.size()) + " edges over " +
                                         std::to_string(n) + " vertices, k=" + std::to_string(k);
                }
                ++checked;
            }
        }
    }
    check.expect(checked == 24, "24 instances swept, saw " + std::to_string(checked));
    check.expect(mismatches == 0, std::to_string(mismatches) +
                                      " cover/provability mismatches, first on " + first_mismatch);

    // The single-edge instance with a one-vertex budget must also be provable
    // by actual proof search, not just the semantic decider.
    const VCInstance single{{{"a", "b"}, {{"a", "b"}}}, 1};
    const Formula f = vc_to_cl5minus(single);
    const SearchResult r = prove(SystemId::CL5Minus, f);
    check.expect(r.outcome == SearchOutcome::Proved, "single-edge instance proved");
    if (r.proof) {
        shared.widths.record(f, *r.proof);
        check.expect(cirq::check(SystemId::CL5Minus, *r.proof).ok, "single-edge proof re-checks");
        check.expect(r.proof->cirquent == formula_cirquent(f),
                     "single-edge proof ends at the translated formula");
    }
    check.expect(watch.seconds() < 900.0, "runtime under fifteen minutes");
}

// ---------------------------------------------------------------------------
// Criterion 8: the exists/forall generator against brute force
// ---------------------------------------------------------------------------

std::vector<std::vector<DnfLiteral>> one_or_two_literal_conjuncts(
    const std::vector<std::string>& vars) {
    std::vector<DnfLiteral> literals;
    for (const std::string& v : vars) {
        literals.push_back({v, false});
        literals.push_back({v, true});
    }
    std::vector<std::vector<DnfLiteral>> out;
    for (const DnfLiteral& a : literals) out.push_back({a});
    for (const DnfLiteral& a : literals)
        for (const DnfLiteral& b : literals) out.push_back({a, b});
    return out;
}

void criterion_sigma2(Checker& check) {
    Stopwatch watch;
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> shapes = {
        {{}, {"y1"}}, {{"x1"}, {}}, {{"x1"}, {"y1"}}, {{"x1", "x2"}, {}}, {{"x1", "x2"}, {"y1"}},
    };
    int checked = 0;
    long mismatches = 0;
    std::string first_mismatch;
    for (const auto& [xs, ys] : shapes) {
        std::vector<std::string> vars = xs;
        vars.insert(vars.end(), ys.begin(), ys.end());
        const std::vector<std::vector<DnfLiteral>> conjuncts = one_or_two_literal_conjuncts(vars);
        std::vector<std::vector<std::vector<DnfLiteral>>> matrices;
        for (const auto& c1 : conjuncts) matrices.push_back({c1});
        for (const auto& c1 : conjuncts)
            for (const auto& c2 : conjuncts) matrices.push_back({c1, c2});
        for (const auto& dnf : matrices) {
            const Sigma2Instance inst{xs, ys, dnf};
            const bool truth = eval_sigma2(inst);
            const bool provable = decide_cl5(tqbf_to_cl5(inst)).provable;
            if (truth != provable) {
                ++mismatches;
                if (first_mismatch.empty())
                    first_mismatch = "|X|=" + std::to_string(xs.size()) +
                                     ", |Y|=" + std::to_string(ys.size()) + ", " +
                                     std::to_string(dnf.size()) + " conjuncts";
            }
            ++checked;
        }
    }
    check.expect(checked == 2730, "2,730 instances swept, saw " + std::to_string(checked));
    check.expect(mismatches == 0, std::to_string(mismatches) +
                                      " truth/provability mismatches, first on " + first_mismatch);
    check.expect(watch.seconds() < 1200.0, "runtime under twenty minutes");
}

// ---------------------------------------------------------------------------
// Criterion 9: identity chains have small proofs, and bench reports them
// ---------------------------------------------------------------------------

Formula identity_chain(int n) {
    Formula f;
    for (int i = n; i >= 1; --i) {
        const std::string name = "P" + std::to_string(i);
        Formula clause = Formula::disj(Formula::neg_atom(name), Formula::atom(name));
        f = f ? Formula::conj(std::move(clause), std::move(f)) : std::move(clause);
    }
    return f;
}

void criterion_proof_size(Checker& check, Shared& shared) {
    Stopwatch watch;
    for (int n = 1; n <= 5; ++n) {
        const Formula f = identity_chain(n);
        const int k = formula_length(f);
        const SearchResult r = prove(SystemId::CL5Minus, f);
        check.expect(r.outcome == SearchOutcome::Proved,
                     "chain of " + std::to_string(n) + " clauses proved");
        if (r.outcome != SearchOutcome::Proved || !r.proof) continue;
        shared.widths.record(f, *r.proof);
        const ProofMetrics m = metrics(*r.proof);
        check.expect(m.size <= k * k, "proof size " + std::to_string(m.size) +
                                          " within the quadratic envelope " + std::to_string(k) +
                                          "^2 for n=" + std::to_string(n));
    }

    int status = -1;
    const std::string csv =
        capture_stdout(cirq_binary() + " bench --family identity --count 5", &status);
    check.expect(status == 0, "bench exits cleanly (got " + std::to_string(status) + ")");
    const std::vector<std::string> lines = split_lines(csv);
    check.expect(lines.size() == 6,
                 "bench emits a header and five rows, got " + std::to_string(lines.size()));
    if (!lines.empty())
        check.expect(lines[0] == "instance,k,result,rule_count,size,max_width,elapsed_ms",
                     "bench header names the reported columns, got '" + lines[0] + "'");
    for (std::size_t i = 1; i < lines.size() && i <= 5; ++i) {
        const std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != 7) {
            check.expect(false, "bench row has seven fields: '" + lines[i] + "'");
            continue;
        }
        const int n = static_cast<int>(i);
        const int k = std::stoi(fields[1]);
        check.expect(fields[0] == "identity_" + std::to_string(n) && k == 4 * n - 1,
                     "bench row " + std::to_string(n) + " names its instance and length");
        check.expect(fields[2] == "proved", "bench row " + std::to_string(n) + " proved");
        check.expect(std::stoi(fields[4]) <= k * k,
                     "bench row " + std::to_string(n) + " size within the quadratic envelope");
    }
    std::ofstream("acceptance_bench_sizes.csv") << csv;
    check.expect(watch.seconds() < 120.0, "runtime under two minutes");
}

// ---------------------------------------------------------------------------
// Criterion 10: JSON round-trips are identity on random valid objects
// ---------------------------------------------------------------------------

Cirquent random_cirquent(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pool_size(0, 5);
    const int n = pool_size(rng);
    Cirquent c;
    for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> len(1, 7);
        c.pool.push_back(testutil::random_formula(rng, len(rng), {"A", "B", "P", "Q", "R"}));
    }
    std::uniform_int_distribution<int> group_count(0, 4);
    const int g = group_count(rng);
    for (int j = 0; j < g; ++j) {
        Group grp;
        for (int i = 0; i < n; ++i)
            if (rng() & 1) grp.push_back(i);
        c.groups.push_back(std::move(grp));
    }
    validate(c);
    return c;
}

void criterion_serialization(Checker& check) {
    Stopwatch watch;
    std::mt19937_64 rng(424242);
    const SystemId systems[] = {SystemId::CL5Minus, SystemId::CL5, SystemId::CCC};
    std::uniform_int_distribution<int> steps(0, 12);

    long proof_breaks = 0, cirquent_breaks = 0, invalid_inputs = 0;
    for (int t = 0; t < 500; ++t) {
        const SystemId system = systems[t % 3];
        const Proof p = random_valid_proof(rng, system, steps(rng));
        if (!cirq::check(system, p).ok) ++invalid_inputs;
        const json j = proof_to_json(p);
        const Proof back = proof_from_json(j);
        if (!(back == p) || proof_to_json(back) != j) ++proof_breaks;

        const Cirquent c = random_cirquent(rng);
        const json cj = cirquent_to_json(c);
        std::vector<std::string> warnings;
        const Cirquent cback = cirquent_from_json(cj, &warnings);
        if (!(cback == c) || cirquent_to_json(cback) != cj || !warnings.empty())
            ++cirquent_breaks;
    }
    check.expect(invalid_inputs == 0,
                 std::to_string(invalid_inputs) + " generated proofs failed checking");
    check.expect(proof_breaks == 0,
                 std::to_string(proof_breaks) + " proof round-trips were not identities");
    check.expect(cirquent_breaks == 0,
                 std::to_string(cirquent_breaks) + " cirquent round-trips were not identities");
    check.expect(watch.seconds() < 60.0, "runtime under one minute");
}

}  // namespace

int main() {
    Tally tally;
    Shared shared;

    run_criterion(tally, 1, "worked example and every displayed rule application replay bit-exact",
                  criterion_figures);
    run_criterion(tally, 2,
                  "full-calculus decisions match the truth-table oracle on all 64,501,134 "
                  "three-atom formulas",
                  criterion_classical_corpus);
    run_criterion(tally, 3,
                  "contraction-free search agrees with the binary-tautology decider on all "
                  "240,164 two-atom formulas",
                  [&](Checker& c) { criterion_search_vs_decider(c, shared); });
    run_criterion(tally, 4,
                  "duplication-free search decides every two-atom formula within default "
                  "budgets, consistent with the semantic deciders",
                  [&](Checker& c) { criterion_dupfree_decides(c, shared); });
    run_criterion(tally, 5,
                  "every duplication-free proof respects the ogroup width bound and doubling "
                  "the width cap changes no outcome",
                  [&](Checker& c) { criterion_width_bound(c, shared); });
    run_criterion(tally, 6,
                  "normalization strips padding, compresses exchange runs, preserves roots, "
                  "and re-checks on 200 padded proofs",
                  criterion_normalizer);
    run_criterion(tally, 7,
                  "small graphs are cover-satisfiable exactly when their translation is "
                  "provable, and the single-edge instance has a real proof",
                  [&](Checker& c) { criterion_vertex_cover(c, shared); });
    run_criterion(tally, 8,
                  "small exists/forall instances are true exactly when their translation is "
                  "provable",
                  criterion_sigma2);
    run_criterion(tally, 9,
                  "identity-chain proofs stay within the quadratic size envelope and bench "
                  "reports size versus length",
                  [&](Checker& c) { criterion_proof_size(c, shared); });
    run_criterion(tally, 10,
                  "proof and cirquent JSON round-trips are identity on 500 seeded random "
                  "objects",
                  criterion_serialization);

    std::printf("acceptance: %d/%d criteria passed\n", tally.passed, tally.total);
    return tally.passed == tally.total ? 0 : 1;
}
