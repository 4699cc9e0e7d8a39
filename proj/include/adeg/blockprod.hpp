#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "adeg/errors.hpp"
#include "adeg/interval.hpp"
#include "adeg/multipoly.hpp"
#include "adeg/region.hpp"
#include "adeg/symmetrize.hpp"

namespace adeg {

// Product of per-block polynomials over disjoint variable blocks: block i
// holds n_i consecutive variables and factor i is a polynomial in those
// variables only. Keeps AND-of-ORs representable without expanding the
// product into 2^(m n) monomials.
struct BlockProductPoly {
    std::vector<MultiPoly> factors; // factor i lives in block_size(i) variables

    std::size_t blocks() const { return factors.size(); }

    std::size_t num_vars() const {
        std::size_t n = 0;
        for (const auto& f : factors) n += f.num_vars();
        return n;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& f : factors) d += f.total_degree();
        return d;
    }

    bool is_multilinear() const {
        for (const auto& f : factors)
            if (!f.is_multilinear()) return false;
        return true;
    }

    Rational eval(const std::vector<Rational>& point) const {
        if (point.size() != num_vars())
            throw invariant_violation("block product evaluation point length mismatch");
        Rational prod = 1;
        std::size_t offset = 0;
        for (const auto& f : factors) {
            std::vector<Rational> sub(point.begin() + offset,
                                      point.begin() + offset + f.num_vars());
            prod *= f.eval(sub);
            offset += f.num_vars();
        }
        return prod;
    }

    // Expands into a plain polynomial over all variables.
    MultiPoly to_multipoly() const {
        const std::size_t N = num_vars();
        MultiPoly out = MultiPoly::constant(N, 1);
        std::size_t offset = 0;
        for (const auto& f : factors) {
            MultiPoly embedded(N);
            MultiPoly::Exponents e(N, 0);
            for (const auto& [fe, c] : f.terms()) {
                std::fill(e.begin(), e.end(), 0u);
                for (std::size_t j = 0; j < f.num_vars(); ++j) e[offset + j] = fe[j];
                embedded.add_term(e, c);
            }
            out = out * embedded;
            offset += f.num_vars();
        }
        return out;
    }

    // The multilinear OR polynomial 1 - prod (1 - x_j) per block: the exact
    // AND_m o OR_n function as a block product.
    static BlockProductPoly and_or(std::size_t m, std::size_t n) {
        BlockProductPoly p;
        MultiPoly prod = MultiPoly::constant(n, 1);
        for (std::size_t j = 0; j < n; ++j)
            prod = prod * (MultiPoly::constant(n, 1) - MultiPoly::variable(n, j));
        MultiPoly or_poly = MultiPoly::constant(n, 1) - prod;
        p.factors.assign(m, or_poly);
        return p;
    }
};

// Expectation collapse of a block product: independence across blocks makes
// the expectation of the product the product of per-block expectations.
inline MultiPoly block_erase(const BlockProductPoly& p) {
    const std::size_t m = p.blocks();
    MultiPoly out = MultiPoly::constant(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        MultiPoly qi = erase_all_subscripts(p.factors[i]); // univariate in block i's rate
        MultiPoly embedded(m);
        MultiPoly::Exponents e(m, 0);
        for (const auto& [fe, c] : qi.terms()) {
            std::fill(e.begin(), e.end(), 0u);
            e[i] = fe[0];
            embedded.add_term(e, c);
        }
        out = out * embedded;
    }
    return out;
}

// Closed form of the collapsed AND_m o OR_n: prod_i (1 - (1 - x_i/n)^n).
inline MultiPoly and_or_collapsed_closed_form(std::size_t m, std::size_t n) {
    MultiPoly out = MultiPoly::constant(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        MultiPoly base = MultiPoly::constant(m, 1) -
                         MultiPoly::variable(m, i).scaled(rat(1, static_cast<long>(n)));
        MultiPoly pw = MultiPoly::constant(m, 1);
        for (std::size_t j = 0; j < n; ++j) pw = pw * base;
        out = out * (MultiPoly::constant(m, 1) - pw);
    }
    return out;
}

// Grid report for a collapsed AND-of-ORs approximator q on [0, n]^m:
//   1. some x_i <= 1/6      => q in [0, 1/2]
//   2. all  x_i >= 2 ln(m)  => q in [3/5, 1]
// The irrational threshold is replaced by a caller-supplied rational upper
// bound on ln(m). The stated constants are only claimed for m >= 10 and
// n > 2 ln m; smaller instances are still checked but flagged.
struct BlockSymmetrizeResult {
    MultiPoly collapsed;
    RegionReport report;
    bool paper_constants_apply = true;
};

namespace detail {

inline BlockSymmetrizeResult collapsed_band_report(MultiPoly collapsed, std::size_t m,
                                                   std::size_t n, const Rational& ln_m_upper,
                                                   unsigned grid_res, unsigned threads,
                                                   std::size_t point_guard) {
    BlockSymmetrizeResult result;
    result.collapsed = std::move(collapsed);

    RatInterval lnm = ln_interval(Rational(static_cast<long>(m)), 48);
    if (ln_m_upper < lnm.lo) throw invariant_violation("ln_m_upper is below ln(m)");
    result.paper_constants_apply = m >= 10 && Rational(static_cast<long>(n)) > 2 * lnm.hi;

    std::vector<Rational> axis = grid_axis(0, Rational(static_cast<long>(n)), grid_res);
    Integer total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= static_cast<unsigned long>(axis.size());
    if (total > static_cast<unsigned long>(point_guard))
        throw guard_exceeded("block_symmetrize_check: grid too large (" + total.get_str() +
                             " points)");

    RegionReport report;
    report.title = "block_symmetrize";
    report.mode = "grid";
    report.params = {{"m", std::to_string(m)},
                     {"n", std::to_string(n)},
                     {"ln_m_upper", to_string(ln_m_upper)},
                     {"grid_resolution", std::to_string(grid_res)},
                     {"paper_constants_apply", result.paper_constants_apply ? "yes" : "no"}};

    const MultiPoly& q = result.collapsed;
    const Rational high_threshold = 2 * ln_m_upper;
    std::vector<std::vector<Rational>> axes(m, axis);
    EvalFn eval = [&](const std::vector<Rational>& pt) { return q.eval(pt); };
    BandCondition c1{"case1", "some x_i <= 1/6 -> q in [0, 1/2]",
                     [](const std::vector<Rational>& pt) {
                         for (const auto& x : pt)
                             if (x <= rat(1, 6)) return true;
                         return false;
                     },
                     Rational(0), rat(1, 2)};
    BandCondition c2{"case2",
                     "all x_i >= 2 ln m (ln m <= " + to_string(ln_m_upper) + ") -> q in [3/5, 1]",
                     [high_threshold](const std::vector<Rational>& pt) {
                         for (const auto& x : pt)
                             if (x < high_threshold) return false;
                         return true;
                     },
                     rat(3, 5), Rational(1)};
    report.conditions.push_back(run_grid_condition(eval, axes, c1, threads));
    report.conditions.push_back(run_grid_condition(eval, axes, c2, threads));
    for (const auto& c : report.conditions) report.pass = report.pass && c.pass;
    result.report = std::move(report);
    return result;
}

} // namespace detail

inline BlockSymmetrizeResult block_symmetrize_check(const BlockProductPoly& p, std::size_t m,
                                                    std::size_t n, const Rational& ln_m_upper,
                                                    unsigned grid_res = 6, unsigned threads = 1,
                                                    std::size_t point_guard = 200000) {
    if (p.blocks() != m) throw invariant_violation("block structure mismatch: wrong block count");
    for (const auto& f : p.factors)
        if (f.num_vars() != n)
            throw invariant_violation("block structure mismatch: wrong block size");
    if (!p.is_multilinear())
        throw invariant_violation("block_symmetrize_check: factors must be multilinear");
    return detail::collapsed_band_report(block_erase(p), m, n, ln_m_upper, grid_res, threads,
                                         point_guard);
}

inline BlockSymmetrizeResult block_symmetrize_check(const MultiPoly& p, std::size_t m,
                                                    std::size_t n, const Rational& ln_m_upper,
                                                    unsigned grid_res = 6, unsigned threads = 1,
                                                    std::size_t point_guard = 200000) {
    if (p.num_vars() != m * n)
        throw invariant_violation("block structure mismatch: arity != m*n");
    return detail::collapsed_band_report(block_erase(p, BlockPartition::uniform(m, n)), m, n,
                                         ln_m_upper, grid_res, threads, point_guard);
}

} // namespace adeg
