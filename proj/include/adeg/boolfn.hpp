#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "adeg/errors.hpp"

namespace adeg {

// Total Boolean function on {0,1}^N, N <= 24. Named families evaluate
// structurally; an explicit table may be supplied instead.
class BoolFn {
public:
    enum class Family { Table, Or, And, Nor, AndOr };

    static BoolFn or_fn(std::size_t n) { return BoolFn(Family::Or, n, 0); }
    static BoolFn and_fn(std::size_t n) { return BoolFn(Family::And, n, 0); }
    static BoolFn nor_fn(std::size_t n) { return BoolFn(Family::Nor, n, 0); }
    // AND of m disjoint n-input ORs; input bit for (gate i, leaf j) is i*n + j.
    static BoolFn and_or(std::size_t m, std::size_t n) { return BoolFn(Family::AndOr, m * n, n); }

    static BoolFn from_table(std::vector<bool> table) {
        std::size_t n = 0;
        while ((std::size_t{1} << n) < table.size()) ++n;
        if ((std::size_t{1} << n) != table.size())
            throw invariant_violation("truth table size must be a power of two");
        BoolFn f(Family::Table, n, 0);
        f.table_ = std::move(table);
        return f;
    }

    std::size_t arity() const { return arity_; }

    bool eval(std::uint32_t x) const {
        switch (family_) {
            case Family::Table: return table_[x];
            case Family::Or: return x != 0;
            case Family::And: return x == mask();
            case Family::Nor: return x == 0;
            case Family::AndOr: {
                const std::uint32_t block_mask = (inner_ >= 32) ? ~0u : ((1u << inner_) - 1u);
                for (std::size_t i = 0; i * inner_ < arity_; ++i) {
                    if (((x >> (i * inner_)) & block_mask) == 0) return false;
                }
                return true;
            }
        }
        return false;
    }

    bool operator()(std::uint32_t x) const { return eval(x); }

    std::vector<bool> truth_table() const {
        if (arity_ > 24) throw guard_exceeded("truth table guard: arity > 24");
        std::vector<bool> t(std::size_t{1} << arity_);
        for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = eval(x);
        return t;
    }

    // True iff the value depends only on the Hamming weight of the input.
    bool is_symmetric() const {
        if (arity_ > 24) throw guard_exceeded("symmetry check guard: arity > 24");
        std::vector<int> by_weight(arity_ + 1, -1);
        for (std::uint32_t x = 0; x < (std::uint32_t{1} << arity_); ++x) {
            int w = std::popcount(x);
            int v = eval(x) ? 1 : 0;
            if (by_weight[w] == -1) by_weight[w] = v;
            else if (by_weight[w] != v) return false;
        }
        return true;
    }

    // Value at each Hamming weight 0..N; requires symmetry.
    std::vector<bool> weight_values() const {
        if (!is_symmetric()) throw invariant_violation("weight_values: function is not symmetric");
        std::vector<bool> v(arity_ + 1);
        std::uint32_t x = 0;
        for (std::size_t w = 0; w <= arity_; ++w) {
            v[w] = eval(x);
            x = (x << 1) | 1u;
        }
        return v;
    }

    BoolFn negated() const {
        auto t = truth_table();
        t.flip();
        return from_table(std::move(t));
    }

    std::string name() const {
        switch (family_) {
            case Family::Table: return "table[" + std::to_string(arity_) + "]";
            case Family::Or: return "OR_" + std::to_string(arity_);
            case Family::And: return "AND_" + std::to_string(arity_);
            case Family::Nor: return "NOR_" + std::to_string(arity_);
            case Family::AndOr:
                return "AND_" + std::to_string(arity_ / inner_) + "oOR_" + std::to_string(inner_);
        }
        return "?";
    }

private:
    BoolFn(Family f, std::size_t arity, std::size_t inner) : family_(f), arity_(arity), inner_(inner) {
        if (arity_ > 24) throw guard_exceeded("Boolean function arity > 24");
        if (f == Family::AndOr && inner_ == 0)
            throw invariant_violation("AND-OR needs a positive inner arity");
    }

    std::uint32_t mask() const {
        return arity_ >= 32 ? ~0u : ((std::uint32_t{1} << arity_) - 1u);
    }

    Family family_;
    std::size_t arity_;
    std::size_t inner_; // n for AndOr
    std::vector<bool> table_;
};

} // namespace adeg
