#pragma once

// Shared test utilities: seeded random generators for formulas and streaming
// enumeration of all NNF formulas over a fixed atom pool.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cirq/formula.hpp"

namespace testutil {

inline cirq::Formula random_formula(std::mt19937_64& rng, int max_len,
                                    const std::vector<std::string>& atoms) {
    std::uniform_int_distribution<int> pick_atom(0, static_cast<int>(atoms.size()) - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    // Shrink toward literals as the budget runs out.
    std::function<cirq::Formula(int)> gen = [&](int budget) -> cirq::Formula {
        if (budget < 3 || coin(rng) == 0) {
            const std::string& a = atoms[pick_atom(rng)];
            return coin(rng) ? cirq::Formula::atom(a) : cirq::Formula::neg_atom(a);
        }
        std::uniform_int_distribution<int> split(1, budget - 2);
        int l = split(rng);
        cirq::Formula lhs = gen(l), rhs = gen(budget - 1 - l);
        return coin(rng) ? cirq::Formula::disj(lhs, rhs) : cirq::Formula::conj(lhs, rhs);
    };
    return gen(max_len);
}

// Calls fn(f) for every NNF formula of exactly `length` over the literal set
// {atoms} x {+,-}.  Lengths are always odd.  Caches whole levels, so keep the
// lengths small when memory matters.
class FormulaEnumerator {
public:
    explicit FormulaEnumerator(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {}

    template <class Fn>
    void for_each_up_to(int max_length, Fn&& fn) {
        for (int len = 1; len <= max_length; len += 2)
            for_each_of_length(len, fn);
    }

    template <class Fn>
    void for_each_of_length(int length, Fn&& fn) {
        if (length % 2 == 0) return;
        // Stream the top level; cache the lower ones.
        if (length == 1) {
            for (const auto& a : atoms_) {
                fn(cirq::Formula::atom(a));
                fn(cirq::Formula::neg_atom(a));
            }
            return;
        }
        level(length - 2);  // materialize lower levels so references below stay stable
        for (int l = 1; l < length - 1; l += 2) {
            int r = length - 1 - l;
            const auto& ls = level(l);
            const auto& rs = level(r);
            for (const auto& lf : ls)
                for (const auto& rf : rs) {
                    fn(cirq::Formula::disj(lf, rf));
                    fn(cirq::Formula::conj(lf, rf));
                }
        }
    }

    const std::vector<cirq::Formula>& level(int length) {
        // Size the outer vector up front: recursive calls below use strictly
        // smaller indices, so the reference lv never dangles.
        if (static_cast<int>(levels_.size()) <= length) levels_.resize(length + 1);
        auto& lv = levels_[length];
        if (!lv.empty() || length % 2 == 0) return lv;
        if (length == 1) {
            for (const auto& a : atoms_) {
                lv.push_back(cirq::Formula::atom(a));
                lv.push_back(cirq::Formula::neg_atom(a));
            }
            return lv;
        }
        for (int l = 1; l < length - 1; l += 2) {
            int r = length - 1 - l;
            const auto& ls = level(l);
            const auto& rs = level(r);
            for (const auto& lf : ls)
                for (const auto& rf : rs) {
                    lv.push_back(cirq::Formula::disj(lf, rf));
                    lv.push_back(cirq::Formula::conj(lf, rf));
                }
        }
        return lv;
    }

private:
    std::vector<std::string> atoms_;
    std::vector<std::vector<cirq::Formula>> levels_;
};

}  // namespace testutil
