#include "cirq/search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cirq/decide.hpp"

namespace cirq {

SearchBudget resolve_budget(SystemId system, const Formula& goal, SearchBudget b) {
    const int k = formula_length(goal);
    const int c = connective_count(goal);
    const int n = positive_occurrence_count(goal);
    if (b.max_nonexchange_rules <= 0)
        b.max_nonexchange_rules = c + 2 * n + k + k * k * k + 64;
    if (b.duplication_cap < 0) b.duplication_cap = 2 * k;
    if (system == SystemId::CL5Minus) b.duplication_cap = 0;
    if (!b.max_width_override) {
        int width = std::max(n, 1);
        if (system == SystemId::CL5) width += b.duplication_cap;
        if (system == SystemId::CCC) width += 2 * b.duplication_cap;
        b.max_width_override = width;
    }
    if (b.max_nodes_expanded <= 0) b.max_nodes_expanded = 4'000'000;
    return b;
}

namespace {

// Abstract proof: the rule tree found by the search, modulo exchanges.
// `premises` are the exact cirquents the reverse step produced; `children[i]`
// proves a cirquent in the same exchange class as `premises[i]` (not
// necessarily bit-exact — elaboration bridges the difference).
struct Skeleton {
    Cirquent proves;
    RuleApplication rule;
    std::vector<Cirquent> premises;
    std::vector<std::shared_ptr<const Skeleton>> children;
    int cost = 0;    // non-exchange rules in the unfolded tree
    int growth = 0;  // growth reversals in the unfolded tree
};

struct MemoEntry {
    std::shared_ptr<const Skeleton> proved;
    // Failure frontier: exploration with (rules <= fail_rules and growth <=
    // fail_growth) found no proof, with the recorded cap interference.
    int fail_rules = -1;
    int fail_growth = -1;
    bool fail_tainted = false;
    bool fail_dup_capped = false;
};

struct SubResult {
    std::shared_ptr<const Skeleton> skeleton;  // null: no proof found
    bool tainted = false;         // a width/node/depth cap shaped the failure
    bool dup_capped = false;      // only the growth allowance shaped it
    bool path_dependent = false;  // an on-path prune shaped the failure
};

class Searcher {
public:
    Searcher(SystemId system, const SearchBudget& budget)
        : system_(system),
          budget_(budget),
          width_cap_(*budget.max_width_override),
          viable_([this](const std::vector<Formula>& members) { return group_valid(members); }) {}

    // A provable cirquent keeps every group classically valid (each rule
    // preserves validity of all conclusion groups given valid premise
    // groups), so an invalid group refutes outright.
    bool groups_valid(const Cirquent& c) {
        for (const Group& g : c.groups) {
            std::vector<Formula> members;
            members.reserve(g.size());
            for (int i : g) members.push_back(c.pool[i]);
            if (!group_valid(members)) return false;
        }
        return true;
    }

    SubResult search(const Cirquent& goal, int remaining, int dup_remaining) {
        if (out_of_nodes_) return {nullptr, true, false, false};
        const std::string key = goal_key(goal);
        auto memo_it = memo_.find(key);
        if (memo_it != memo_.end()) {
            const MemoEntry& entry = memo_it->second;
            if (entry.proved && entry.proved->cost <= remaining &&
                entry.proved->growth <= dup_remaining) {
                ++stats_.memo_hits;
                return {entry.proved, false, false, false};
            }
            if (remaining <= entry.fail_rules && dup_remaining <= entry.fail_growth) {
                ++stats_.memo_hits;
                return {nullptr, entry.fail_tainted, entry.fail_dup_capped, false};
            }
        }
        if (on_path_.count(key)) {
            // A minimal proof never repeats an exchange class along a branch,
            // so this candidate can be skipped for the root decision; the
            // failure must not be memoized, though — it depends on the path.
            return {nullptr, false, false, true};
        }
        if (++stats_.nodes_expanded > budget_.max_nodes_expanded) {
            out_of_nodes_ = true;
            return {nullptr, true, false, false};
        }

        bool tainted = false;
        bool dup_capped = false;
        bool path_dependent = false;
        std::shared_ptr<const Skeleton> found;

        if (remaining < 1) {
            tainted = true;  // even an axiom costs one application
        } else {
            std::vector<ReverseCandidate> candidates;
            try {
                candidates = enumerate_reverse(system_, goal, viable_);
            } catch (const std::runtime_error&) {
                tainted = true;  // a distribution blew the enumeration caps
            }
            on_path_.insert(key);
            for (ReverseCandidate& cand : candidates) {
                if (cand.grows && dup_remaining <= 0) {
                    dup_capped = true;
                    continue;
                }
                bool too_wide = false;
                for (const Cirquent& premise : cand.premises)
                    too_wide |= static_cast<int>(premise.groups.size()) > width_cap_;
                if (too_wide) {
                    // The derived cap is exact for the duplication-free
                    // system, a heuristic everywhere else.
                    tainted |= !width_cap_complete_;
                    continue;
                }
                const int child_remaining = remaining - 1;
                const int child_dup = dup_remaining - (cand.grows ? 1 : 0);
                std::vector<std::shared_ptr<const Skeleton>> children;
                children.reserve(cand.premises.size());
                bool failed = false;
                for (const Cirquent& premise : cand.premises) {
                    SubResult sub = search(premise, child_remaining, child_dup);
                    if (!sub.skeleton) {
                        tainted |= sub.tainted;
                        dup_capped |= sub.dup_capped;
                        path_dependent |= sub.path_dependent;
                        failed = true;
                        break;
                    }
                    children.push_back(std::move(sub.skeleton));
                }
                if (failed) continue;
                auto skeleton = std::make_shared<Skeleton>();
                skeleton->proves = goal;
                skeleton->rule = cand.rule;
                skeleton->premises = std::move(cand.premises);
                skeleton->children = std::move(children);
                skeleton->cost = 1;
                skeleton->growth = cand.grows ? 1 : 0;
                for (const auto& child : skeleton->children) {
                    skeleton->cost += child->cost;
                    skeleton->growth += child->growth;
                }
                found = std::move(skeleton);
                break;
            }
            on_path_.erase(key);
        }

        MemoEntry& entry = memo_[key];
        if (found) {
            if (!entry.proved ||
                (found->cost <= entry.proved->cost && found->growth <= entry.proved->growth))
                entry.proved = found;
            return {found, false, false, false};
        }
        if (!path_dependent && remaining >= entry.fail_rules &&
            dup_remaining >= entry.fail_growth) {
            entry.fail_rules = remaining;
            entry.fail_growth = dup_remaining;
            entry.fail_tainted = tainted;
            entry.fail_dup_capped = dup_capped;
        }
        return {nullptr, tainted, dup_capped, path_dependent};
    }

    // Unfold a skeleton into a concrete proof, inserting the exchange chains
    // that reconcile each child's conclusion with the premise the rule needs
    // and the rule's own output with the cirquent this subtree must end at.
    Proof elaborate(const Skeleton& s) {
        std::vector<Proof> children;
        children.reserve(s.children.size());
        for (std::size_t i = 0; i < s.children.size(); ++i) {
            Proof sub = elaborate(*s.children[i]);
            for (const RuleApplication& ex : exchange_chain(s.children[i]->proves, s.premises[i])) {
                Cirquent next = cirq::apply(ex, {sub.cirquent});
                sub = Proof{std::move(next), ex, {std::move(sub)}};
            }
            children.push_back(std::move(sub));
        }
        Cirquent derived = cirq::apply(s.rule, s.premises);
        Proof node{derived, s.rule, std::move(children)};
        for (const RuleApplication& ex : exchange_chain(derived, s.proves)) {
            Cirquent next = cirq::apply(ex, {node.cirquent});
            node = Proof{std::move(next), ex, {std::move(node)}};
        }
        return node;
    }

    void set_width_cap_complete(bool complete) { width_cap_complete_ = complete; }
    SearchStats& stats() { return stats_; }

private:
    bool group_valid(const std::vector<Formula>& members) {
        if (members.empty()) return false;  // empty disjunction: never valid
        std::vector<std::string> rendered;
        rendered.reserve(members.size());
        for (const Formula& m : members) rendered.push_back(render_formula(m));
        std::sort(rendered.begin(), rendered.end());
        std::string cache_key;
        for (const std::string& r : rendered) {
            cache_key += r;
            cache_key += '\x1f';
        }
        auto it = validity_cache_.find(cache_key);
        if (it != validity_cache_.end()) return it->second;
        Formula disjunction = members[0];
        for (std::size_t i = 1; i < members.size(); ++i)
            disjunction = Formula::disj(disjunction, members[i]);
        bool valid = is_tautology(disjunction).tautology;
        validity_cache_.emplace(std::move(cache_key), valid);
        return valid;
    }

    // Exchange-class key under a searcher-lifetime formula labeling: interned
    // ids satisfy "equal rank iff equal formula", so keys stay comparable
    // across every cirquent this searcher visits, without re-rendering text.
    std::string goal_key(const Cirquent& c) {
        std::vector<int> ranks(c.pool.size());
        for (std::size_t i = 0; i < c.pool.size(); ++i) {
            auto [it, fresh] =
                rank_of_.try_emplace(c.pool[i], static_cast<int>(rank_of_.size()));
            (void)fresh;
            ranks[i] = it->second;
        }
        return canonical_key_with_ranks(c, ranks);
    }

    SystemId system_;
    SearchBudget budget_;
    int width_cap_;
    bool width_cap_complete_ = false;
    GroupViability viable_;
    std::unordered_map<Formula, int, FormulaHash> rank_of_;
    std::unordered_map<std::string, MemoEntry> memo_;
    std::unordered_set<std::string> on_path_;
    std::unordered_map<std::string, bool> validity_cache_;
    SearchStats stats_;
    bool out_of_nodes_ = false;
};

}  // namespace

SearchResult prove(SystemId system, const Formula& goal, SearchBudget requested) {
    const auto started = std::chrono::steady_clock::now();
    const SearchBudget budget = resolve_budget(system, goal, requested);
    Searcher searcher(system, budget);
    // The derived width bound (positive occurrences) is proved exact for the
    // duplication-free system; capping at or above it cannot lose proofs.
    searcher.set_width_cap_complete(system == SystemId::CL5Minus &&
                                    *budget.max_width_override >=
                                        positive_occurrence_count(goal));

    SearchResult result;
    const Cirquent root = formula_cirquent(goal);
    bool settled = false;
    if (!searcher.groups_valid(root)) {
        // Not even classically valid: unprovable in every system.
        result.outcome = SearchOutcome::Refuted;
        settled = true;
    } else if (system == SystemId::CL5 && !decide_cl5(goal).provable) {
        // The binary-tautology decider is exact for this system, so a
        // negative answer refutes without touching the duplication-inflated
        // search space; search runs only to build explicit proof objects.
        result.outcome = SearchOutcome::Refuted;
        settled = true;
    } else if (system == SystemId::CCC && !decide_ccc(goal).provable) {
        result.outcome = SearchOutcome::Refuted;
        settled = true;
    }
    if (!settled) {
        // Iterative deepening over the growth allowance: proofs needing few
        // duplications are found before any duplication-inflated subspace
        // opens up, and an exhaustion that never hit the allowance is final.
        result.outcome = SearchOutcome::BudgetExceeded;
        for (int level = 0; level <= budget.duplication_cap; ++level) {
            SubResult sub = searcher.search(root, budget.max_nonexchange_rules, level);
            if (sub.skeleton) {
                Proof proof = searcher.elaborate(*sub.skeleton);
                assert(proof.cirquent == root);
                assert(check(system, proof).ok);
                result.outcome = SearchOutcome::Proved;
                result.proof = std::move(proof);
                break;
            }
            if (!sub.tainted && !sub.dup_capped) {
                // Untainted exhaustion: a genuine refutation.  For the
                // systems with exact deciders this is unreachable (the
                // decider accepted above), so reaching it would expose a
                // completeness bug.
                result.outcome = SearchOutcome::Refuted;
                if (system == SystemId::CL5) assert(!decide_cl5(goal).provable);
                if (system == SystemId::CCC) assert(!decide_ccc(goal).provable);
                break;
            }
            // A deeper growth allowance only helps when the allowance itself
            // was the binding cap.
            if (!sub.dup_capped) break;
        }
    }
    result.stats = searcher.stats();
    result.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

}  // namespace cirq
