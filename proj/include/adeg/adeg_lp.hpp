#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adeg/boolfn.hpp"
#include "adeg/errors.hpp"
#include "adeg/interval.hpp"
#include "adeg/multipoly.hpp"
#include "adeg/simplex.hpp"

namespace adeg {

// Two-sided approximation thresholds: p must land in [0, alpha] on 0-inputs
// and in [beta, 1] on 1-inputs.
struct ApproxSpec {
    Rational alpha, beta;

    ApproxSpec(Rational a, Rational b) : alpha(std::move(a)), beta(std::move(b)) {
        if (!(0 < alpha && alpha < beta && beta < 1))
            throw invariant_violation("approximation spec needs 0 < alpha < beta < 1");
    }
};

// Result of one feasibility solve. The exact row system travels with the
// outcome so that witnesses of either kind can be re-verified from scratch.
struct LpOutcome {
    bool feasible = false;
    MultiPoly witness; // populated when feasible
    std::vector<FarkasEntry> certificate;
    std::vector<LinearConstraint> rows;
    std::vector<std::string> row_desc;
    std::size_t basis_size = 0;
    unsigned long pivots = 0;

    // Positive contradiction gap recombined from the stored rows.
    Rational recombined_gap(std::size_t nvars) const {
        return certificate_gap(rows, certificate, nvars);
    }
};

inline bool approximates(const BoolFn& f, const MultiPoly& p, const ApproxSpec& spec) {
    if (p.num_vars() != f.arity()) return false;
    const std::size_t n = f.arity();
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
        std::vector<Rational> pt(n);
        for (std::size_t i = 0; i < n; ++i) pt[i] = (x >> i) & 1u;
        Rational v = p.eval(pt);
        if (f.eval(x)) {
            if (v < spec.beta || v > 1) return false;
        } else {
            if (v < 0 || v > spec.alpha) return false;
        }
    }
    return true;
}

namespace detail {

inline std::size_t checked_basis_size(const Integer& count, std::size_t guard) {
    if (count > static_cast<unsigned long>(guard))
        throw guard_exceeded("LP basis guard exceeded: " + count.get_str() + " columns > " +
                             std::to_string(guard));
    return static_cast<std::size_t>(count.get_ui());
}

inline std::string mask_string(std::uint32_t x, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i)
        if ((x >> i) & 1u) s[i] = '1';
    return s;
}

} // namespace detail

// Feasibility of a degree-<= d multilinear approximator for f, as an exact
// LP over the monomial basis with one two-sided constraint per input point.
inline LpOutcome lp_feasible(const BoolFn& f, unsigned d, const ApproxSpec& spec,
                             std::size_t basis_guard = 50000) {
    const std::size_t n = f.arity();
    if (n > 16)
        throw guard_exceeded("lp_feasible enumerates 2^N constraints; arity > 16 refused");

    Integer count = 0;
    for (unsigned j = 0; j <= std::min<unsigned>(d, n); ++j) count += binomial(n, j);
    const std::size_t K = detail::checked_basis_size(count, basis_guard);

    // Basis monomials: variable subsets of size <= d, ordered by mask value.
    std::vector<std::uint32_t> basis;
    basis.reserve(K);
    for (std::uint32_t T = 0; T < (std::uint32_t{1} << n); ++T)
        if (static_cast<unsigned>(std::popcount(T)) <= d) basis.push_back(T);

    LpOutcome out;
    out.basis_size = basis.size();
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
        std::vector<Rational> row(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k)
            row[k] = ((basis[k] & x) == basis[k]) ? 1 : 0;
        std::vector<Rational> neg(row.size());
        for (std::size_t k = 0; k < row.size(); ++k) neg[k] = -row[k];
        const std::string pt = detail::mask_string(x, n);
        if (f.eval(x)) {
            out.rows.push_back({row, spec.beta});
            out.row_desc.push_back("x=" + pt + " p>=beta");
            out.rows.push_back({std::move(neg), Rational(-1)});
            out.row_desc.push_back("x=" + pt + " p<=1");
        } else {
            out.rows.push_back({row, Rational(0)});
            out.row_desc.push_back("x=" + pt + " p>=0");
            out.rows.push_back({std::move(neg), -spec.alpha});
            out.row_desc.push_back("x=" + pt + " p<=alpha");
        }
    }

    FeasibilityOutcome sol = solve_ge_system(out.rows, basis.size());
    out.feasible = sol.feasible;
    out.pivots = sol.pivots;
    if (sol.feasible) {
        MultiPoly p(n);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            MultiPoly::Exponents e(n, 0);
            for (std::size_t i = 0; i < n; ++i)
                if ((basis[k] >> i) & 1u) e[i] = 1;
            p.add_term(e, sol.point[k]);
        }
        if (!approximates(f, p, spec))
            throw internal_error("lp_feasible: witness failed re-verification");
        out.witness = std::move(p);
    } else {
        out.certificate = std::move(sol.certificate);
        out.recombined_gap(basis.size()); // throws unless exactly contradictory
    }
    return out;
}

// Same contract for symmetric f, but over univariate polynomials constrained
// at the N+1 Hamming weights.
inline LpOutcome symmetric_reduce_lp(const BoolFn& f, unsigned d, const ApproxSpec& spec,
                                     std::size_t basis_guard = 50000) {
    if (!f.is_symmetric())
        throw invariant_violation("symmetric_reduce_lp: function is not symmetric");
    const std::size_t n = f.arity();
    const std::size_t K = detail::checked_basis_size(Integer(d) + 1, basis_guard);

    std::vector<bool> values = f.weight_values();
    LpOutcome out;
    out.basis_size = K;
    for (std::size_t w = 0; w <= n; ++w) {
        std::vector<Rational> row(K);
        for (std::size_t k = 0; k < K; ++k) row[k] = pow_rational(Rational(static_cast<long>(w)), k);
        std::vector<Rational> neg(K);
        for (std::size_t k = 0; k < K; ++k) neg[k] = -row[k];
        const std::string pt = "w=" + std::to_string(w);
        if (values[w]) {
            out.rows.push_back({row, spec.beta});
            out.row_desc.push_back(pt + " q>=beta");
            out.rows.push_back({std::move(neg), Rational(-1)});
            out.row_desc.push_back(pt + " q<=1");
        } else {
            out.rows.push_back({row, Rational(0)});
            out.row_desc.push_back(pt + " q>=0");
            out.rows.push_back({std::move(neg), -spec.alpha});
            out.row_desc.push_back(pt + " q<=alpha");
        }
    }

    FeasibilityOutcome sol = solve_ge_system(out.rows, K);
    out.feasible = sol.feasible;
    out.pivots = sol.pivots;
    if (sol.feasible) {
        MultiPoly q(1);
        for (std::size_t k = 0; k < K; ++k) q.add_term({static_cast<unsigned>(k)}, sol.point[k]);
        for (std::size_t w = 0; w <= n; ++w) {
            Rational v = q.eval({Rational(static_cast<long>(w))});
            bool ok = values[w] ? (spec.beta <= v && v <= 1) : (0 <= v && v <= spec.alpha);
            if (!ok) throw internal_error("symmetric_reduce_lp: witness failed re-verification");
        }
        out.witness = std::move(q);
    } else {
        out.certificate = std::move(sol.certificate);
        out.recombined_gap(K);
    }
    return out;
}

// Minimal degree with a feasible approximator, found by ascending search.
// Carries the primal witness at the answer and the infeasibility certificate
// one degree below (when the answer is positive).
struct DegreeResult {
    unsigned degree = 0;
    MultiPoly witness;
    LpOutcome at_degree;
    std::optional<LpOutcome> below; // dual certificate at degree - 1
};

inline DegreeResult approx_degree(const BoolFn& f, const ApproxSpec& spec,
                                  std::size_t basis_guard = 50000) {
    DegreeResult result;
    std::optional<LpOutcome> prev;
    for (unsigned d = 0; d <= f.arity(); ++d) {
        LpOutcome out = lp_feasible(f, d, spec, basis_guard);
        if (out.feasible) {
            result.degree = d;
            result.witness = out.witness;
            result.at_degree = std::move(out);
            result.below = std::move(prev);
            return result;
        }
        prev = std::move(out);
    }
    // The exact multilinear representation of f is always feasible at d = N.
    throw internal_error("approx_degree: no feasible degree up to the arity");
}

// Sanity report over (n, degree) pairs: strictly increasing n, nondecreasing
// degree, and the observed window of degree/sqrt(n) ratios.
struct ThetaReport {
    bool empty = false;
    bool monotone = true;
    RatInterval window;
    std::string text;
};

inline ThetaReport theta_sqrt_check(const std::vector<std::pair<std::size_t, unsigned>>& results) {
    ThetaReport report;
    std::ostringstream os;
    os << "theta_sqrt_check\n";
    if (results.empty()) {
        report.empty = true;
        os << "entries = 0\n";
        report.text = os.str();
        return report;
    }
    os << "entries = " << results.size() << "\n";
    bool first = true;
    unsigned prev_degree = 0;
    std::size_t prev_n = 0;
    for (const auto& [n, degree] : results) {
        if (!first && n <= prev_n)
            throw invariant_violation("theta_sqrt_check: n values must be strictly increasing");
        if (!first && degree < prev_degree) report.monotone = false;
        if (n == 0) throw invariant_violation("theta_sqrt_check: n must be positive");
        RatInterval s = sqrt_interval(Rational(static_cast<long>(n)));
        RatInterval ratio = RatInterval(Rational(degree)) / s;
        if (first) {
            report.window = ratio;
        } else {
            report.window.lo = std::min(report.window.lo, ratio.lo);
            report.window.hi = std::max(report.window.hi, ratio.hi);
        }
        os << "n=" << n << " degree=" << degree << " ratio_lo=" << to_string(ratio.lo)
           << " ratio_hi=" << to_string(ratio.hi) << "\n";
        prev_n = n;
        prev_degree = degree;
        first = false;
    }
    os << "monotone = " << (report.monotone ? "yes" : "no") << "\n";
    os << "window_lo = " << to_string(report.window.lo) << "\n";
    os << "window_hi = " << to_string(report.window.hi) << "\n";
    report.text = os.str();
    return report;
}

} // namespace adeg
