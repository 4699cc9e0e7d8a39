#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "adeg/errors.hpp"
#include "adeg/laurent.hpp"
#include "adeg/multipoly.hpp"

namespace adeg {

// Disjoint variable blocks covering all variables of a polynomial.
struct BlockPartition {
    std::vector<std::vector<std::size_t>> blocks;

    void validate(std::size_t num_vars) const {
        std::vector<bool> seen(num_vars, false);
        std::size_t covered = 0;
        for (const auto& b : blocks) {
            if (b.empty()) throw invariant_violation("block partition: empty block");
            for (std::size_t v : b) {
                if (v >= num_vars) throw invariant_violation("block partition: index out of range");
                if (seen[v]) throw invariant_violation("block partition: overlapping blocks");
                seen[v] = true;
                ++covered;
            }
        }
        if (covered != num_vars) throw invariant_violation("block partition: does not cover all variables");
    }

    static BlockPartition uniform(std::size_t m, std::size_t n) {
        BlockPartition part;
        part.blocks.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            part.blocks[i].resize(n);
            std::iota(part.blocks[i].begin(), part.blocks[i].end(), i * n);
        }
        return part;
    }
};

// Pairing and rescaling parameters for the paired Laurent step.
struct PairScaleParams {
    Rational scale_b;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    void validate(std::size_t num_vars) const {
        if (scale_b <= 0) throw invariant_violation("pair scale must be positive");
        std::vector<bool> seen(num_vars, false);
        for (auto [i, j] : pairs) {
            if (i >= num_vars || j >= num_vars)
                throw invariant_violation("pair index out of range");
            if (i == j || seen[i] || seen[j])
                throw invariant_violation("pairs must be disjoint");
            seen[i] = seen[j] = true;
        }
    }

    // (0,1), (2,3), ... over all m variables.
    static PairScaleParams consecutive(std::size_t m, const Rational& b) {
        if (m % 2 != 0) throw invariant_violation("consecutive pairing needs an even variable count");
        PairScaleParams params;
        params.scale_b = b;
        for (std::size_t i = 0; i + 1 < m; i += 2) params.pairs.emplace_back(i, i + 1);
        return params;
    }
};

// Replaces every variable of a multilinear polynomial by mu/n, where n is the
// variable count. The result q satisfies q(mu) = E[p] under n independent
// Bernoulli(mu/n) coordinates, and deg(q) <= deg(p).
inline MultiPoly erase_all_subscripts(const MultiPoly& p) {
    if (!p.is_multilinear())
        throw invariant_violation("erase_all_subscripts: polynomial is not multilinear");
    if (p.num_vars() == 0) throw invariant_violation("erase_all_subscripts: no variables");
    const std::size_t n = p.num_vars();
    MultiPoly q(1);
    for (const auto& [e, c] : p.terms()) {
        unsigned w = std::accumulate(e.begin(), e.end(), 0u);
        q.add_term({w}, c * pow_rational(Rational(1, static_cast<long>(n)), w));
    }
    return q;
}

// Collapses one block of variables to a single fresh variable (placed at the
// position of the block's smallest index) with Bernoulli mean new_var/|block|.
// Other variables keep their relative order.
inline MultiPoly erase_one_block(const MultiPoly& p, std::vector<std::size_t> block) {
    if (block.empty()) throw invariant_violation("erase_one_block: empty block");
    std::sort(block.begin(), block.end());
    if (std::adjacent_find(block.begin(), block.end()) != block.end())
        throw invariant_violation("erase_one_block: repeated variable");
    if (block.back() >= p.num_vars())
        throw invariant_violation("erase_one_block: index out of range");

    const std::size_t n = p.num_vars();
    const std::size_t bsz = block.size();
    std::vector<bool> in_block(n, false);
    for (std::size_t v : block) in_block[v] = true;

    // New index layout: block -> one slot at block[0]'s position among the
    // surviving variables.
    std::vector<std::size_t> new_index(n, 0);
    std::size_t next = 0;
    std::size_t slot = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == block[0]) slot = next++;
        else if (!in_block[i]) new_index[i] = next++;
    }
    const std::size_t out_vars = n - bsz + 1;

    MultiPoly q(out_vars);
    MultiPoly::Exponents e(out_vars);
    const Rational inv(1, static_cast<long>(bsz));
    for (const auto& [exps, c] : p.terms()) {
        unsigned w = 0;
        std::fill(e.begin(), e.end(), 0u);
        for (std::size_t i = 0; i < n; ++i) {
            if (in_block[i]) {
                if (exps[i] > 1)
                    throw invariant_violation("erase_one_block: block variables must be multilinear");
                w += exps[i];
            } else {
                e[new_index[i]] = exps[i];
            }
        }
        e[slot] = w;
        q.add_term(e, c * pow_rational(inv, w));
    }
    return q;
}

// Applies the Bernoulli-expectation collapse to every block at once: block i
// becomes variable i with mean x_i / |block i|.
inline MultiPoly block_erase(const MultiPoly& p, const BlockPartition& partition) {
    partition.validate(p.num_vars());
    if (!p.is_multilinear())
        throw invariant_violation("block_erase: polynomial is not multilinear");
    const std::size_t m = partition.blocks.size();
    std::vector<std::size_t> block_of(p.num_vars());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t v : partition.blocks[i]) block_of[v] = i;

    MultiPoly q(m);
    MultiPoly::Exponents e(m);
    for (const auto& [exps, c] : p.terms()) {
        std::fill(e.begin(), e.end(), 0u);
        for (std::size_t v = 0; v < p.num_vars(); ++v) e[block_of[v]] += exps[v];
        Rational coef = c;
        for (std::size_t i = 0; i < m; ++i)
            coef *= pow_rational(Rational(1, static_cast<long>(partition.blocks[i].size())), e[i]);
        q.add_term(e, coef);
    }
    return q;
}

// P_i: the unique univariate polynomial with P_i(s + 1/s) = s^i + s^-i.
// Three-term recursion P_0 = 2, P_1 = t, P_i = t P_{i-1} - P_{i-2}.
inline MultiPoly pair_basis_poly(unsigned i) {
    MultiPoly two = MultiPoly::constant(1, 2);
    if (i == 0) return two;
    MultiPoly t = MultiPoly::variable(1, 0);
    if (i == 1) return t;
    MultiPoly prev2 = two, prev1 = t;
    for (unsigned k = 2; k <= i; ++k) {
        MultiPoly cur = t * prev1 - prev2;
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return prev1;
}

// Collapses a symmetric pair of variables (i, j) into one variable t with
// q(..., t, ...) = p(..., s, 1/s, ...) whenever t = s + 1/s. The new variable
// sits at position min(i, j); the variable at max(i, j) disappears and higher
// indices shift down. Degree never increases.
inline MultiPoly laurent_symmetrize(const MultiPoly& p, std::size_t i, std::size_t j) {
    if (i == j || i >= p.num_vars() || j >= p.num_vars())
        throw invariant_violation("laurent_symmetrize: bad variable pair");
    if (p != p.swapped(i, j))
        throw invariant_violation("laurent_symmetrize: polynomial is not symmetric in the pair");
    const std::size_t lo = std::min(i, j), hi = std::max(i, j);
    const std::size_t n = p.num_vars();

    // Group terms by the exponents of all other variables; each group is a
    // Laurent polynomial in s after substituting (s, 1/s) for the pair.
    std::map<MultiPoly::Exponents, LaurentPoly> groups;
    for (const auto& [exps, c] : p.terms()) {
        MultiPoly::Exponents residual;
        residual.reserve(n - 2);
        for (std::size_t v = 0; v < n; ++v)
            if (v != lo && v != hi) residual.push_back(exps[v]);
        groups[residual].add_term(static_cast<long>(exps[i]) - static_cast<long>(exps[j]), c);
    }

    MultiPoly q(n - 1);
    for (const auto& [residual, ell] : groups) {
        if (!ell.is_exponent_symmetric())
            throw internal_error("laurent_symmetrize: asymmetric Laurent coefficients");
        // ell = a_0 * 2 + sum_{e>0} a_e (s^e + s^-e)  ->  a_0 P_0 + sum a_e P_e
        MultiPoly univ = MultiPoly::zero(1);
        for (const auto& [e, c] : ell.terms()) {
            if (e < 0) continue;
            Rational a = (e == 0) ? Rational(c / 2) : c;
            univ += pair_basis_poly(static_cast<unsigned>(e)).scaled(a);
        }
        // Stitch the univariate part back into the full variable layout.
        for (const auto& [ue, uc] : univ.terms()) {
            MultiPoly::Exponents e(n - 1);
            std::size_t r = 0;
            for (std::size_t v = 0; v < n; ++v) {
                if (v == hi) continue;
                if (v == lo) e[v] = ue[0];
                else e[v > hi ? v - 1 : v] = residual[r++];
            }
            q.add_term(e, uc);
        }
    }
    return q;
}

// Rescales each paired variable by b (x = b s) and then applies the Laurent
// collapse pair by pair. For a polynomial symmetric within every pair this
// yields q with q(t_1, ..., t_{m/2}) = p(b s_1, b/s_1, ...) when
// t_i = s_i + 1/s_i. Output variable i corresponds to the i-th pair in order
// of smallest index.
inline MultiPoly laurent_symmetrize_pairs(const MultiPoly& p, const PairScaleParams& params) {
    params.validate(p.num_vars());
    if (params.pairs.empty()) throw invariant_violation("laurent_symmetrize_pairs: no pairs");
    if (2 * params.pairs.size() != p.num_vars())
        throw invariant_violation(
            "laurent_symmetrize_pairs: pairs must cover all variables (fix the last variable "
            "first if the count is odd)");

    MultiPoly work = p;
    for (auto [i, j] : params.pairs) {
        work = work.substitute_affine(i, params.scale_b, 0);
        work = work.substitute_affine(j, params.scale_b, 0);
    }

    // Track where each original variable currently lives as pairs collapse.
    std::vector<std::size_t> pos(p.num_vars());
    std::iota(pos.begin(), pos.end(), 0);
    auto pairs = params.pairs;
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return std::min(a.first, a.second) < std::min(b.first, b.second);
    });

    for (auto [i, j] : pairs) {
        std::size_t a = pos[i], b = pos[j];
        work = laurent_symmetrize(work, a, b);
        std::size_t gone = std::max(a, b);
        for (auto& x : pos)
            if (x > gone) --x;
        pos[i] = pos[j] = std::min(a, b);
    }
    return work;
}

} // namespace adeg
