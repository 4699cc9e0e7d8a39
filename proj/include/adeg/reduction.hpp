#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adeg/errors.hpp"
#include "adeg/multipoly.hpp"
#include "adeg/poly_io.hpp"
#include "adeg/region.hpp"
#include "adeg/simplex.hpp"
#include "adeg/symmetrize.hpp"

namespace adeg {

// Affine-shift constants of the pairing step. After the Laurent collapse the
// interesting thresholds sit at t = 2 and t = b/a + a/b; the shift
// tbar = (t - 2) * ab/(b-a)^2 moves them to 0 and 1, and the box endpoint
// t = n/b + b/n lands at k = a(n-b)^2 / (n(b-a)^2).
struct ShiftParams {
    Rational scale;   // ab/(b-a)^2
    Rational k;
    long k_floor;

    static ShiftParams from_region(const RobustRegionSpec& spec) {
        ShiftParams s;
        const Rational &a = spec.a, &b = spec.b, &n = spec.n;
        s.scale = a * b / ((b - a) * (b - a));
        s.k = a * (n - b) * (n - b) / (n * (b - a) * (b - a));
        Rational alt = (n / b + b / n - 2) * s.scale;
        if (alt != s.k) throw internal_error("shift constants fail their closed-form identity");
        if (s.k < 1) throw invariant_violation("shift params: k < 1 (side condition violated)");
        s.k_floor = static_cast<long>(floor_rational(s.k).get_si());
        return s;
    }

    // tbar-space -> t-space substitution applied to a polynomial in t.
    MultiPoly apply_to(const MultiPoly& q) const {
        MultiPoly out = q;
        for (std::size_t i = 0; i < q.num_vars(); ++i)
            out = out.substitute_affine(i, 1 / scale, 2);
        return out;
    }
};

// Replaces each variable of qbar by a sum of `copies` fresh Boolean
// variables and multilinearizes. Variable i expands into the contiguous
// block [i*copies, (i+1)*copies).
inline MultiPoly unsymmetrize(const MultiPoly& qbar, unsigned copies) {
    if (copies == 0) throw invariant_violation("unsymmetrize: zero copies");
    const std::size_t blocks = qbar.num_vars();
    const std::size_t N = blocks * copies;
    if (N > 24) throw guard_exceeded("unsymmetrize: final arity exceeds 24");

    // Multilinearized powers of z_0 + ... + z_{copies-1}, shared by all blocks.
    unsigned max_e = 0;
    for (const auto& [e, c] : qbar.terms())
        for (unsigned x : e) max_e = std::max(max_e, x);
    std::vector<MultiPoly> power(max_e + 1, MultiPoly::constant(copies, 1));
    if (max_e >= 1) {
        MultiPoly sum(copies);
        for (std::size_t j = 0; j < copies; ++j) sum += MultiPoly::variable(copies, j);
        power[1] = sum;
        for (unsigned e = 2; e <= max_e; ++e)
            power[e] = (power[e - 1] * sum).multilinearized();
    }

    auto embed = [&](const MultiPoly& f, std::size_t block) {
        MultiPoly out(N);
        MultiPoly::Exponents exps(N, 0);
        for (const auto& [e, c] : f.terms()) {
            std::fill(exps.begin(), exps.end(), 0u);
            for (std::size_t j = 0; j < copies; ++j) exps[block * copies + j] = e[j];
            out.add_term(exps, c);
        }
        return out;
    };

    MultiPoly out(N);
    for (const auto& [e, c] : qbar.terms()) {
        MultiPoly term = MultiPoly::constant(N, c);
        for (std::size_t i = 0; i < blocks; ++i) {
            if (e[i] == 0) continue;
            term = term * embed(power[e[i]], i);
        }
        out += term;
    }
    return out;
}

// Exact check that `final` approximates NOR on all 2^N Boolean points:
// in [beta, 1] at the all-zeros input, in [0, alpha] everywhere else.
struct NorCheck {
    bool pass = true;
    std::uint32_t failing_point = 0;
    Rational failing_value;
    std::size_t arity = 0;

    std::string text() const {
        std::ostringstream os;
        os << "nor_check arity=" << arity << " outcome=" << (pass ? "pass" : "fail") << "\n";
        if (!pass) {
            os << "failing_point = ";
            for (std::size_t i = 0; i < arity; ++i) os << (((failing_point >> i) & 1u) ? '1' : '0');
            os << "\nfailing_value = " << to_string(failing_value) << "\n";
        }
        return os.str();
    }
};

inline NorCheck verify_nor_approx(const MultiPoly& final_poly, const Rational& alpha,
                                  const Rational& beta) {
    const std::size_t N = final_poly.num_vars();
    if (N > 20) throw guard_exceeded("verify_nor_approx: arity > 20");
    NorCheck check;
    check.arity = N;

    // Dense subset-sum (zeta) transform of the multilinearized coefficients
    // gives the value at every Boolean point in N 2^N additions.
    MultiPoly ml = final_poly.multilinearized();
    std::vector<Rational> v(std::size_t{1} << N, Rational(0));
    for (const auto& [e, c] : ml.terms()) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < N; ++i)
            if (e[i]) mask |= (1u << i);
        v[mask] += c;
    }
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t s = 0; s < v.size(); ++s)
            if (s & bit) v[s] += v[s ^ bit];
    }

    for (std::size_t s = 0; s < v.size(); ++s) {
        bool ok = (s == 0) ? (beta <= v[s] && v[s] <= 1) : (0 <= v[s] && v[s] <= alpha);
        if (!ok) {
            check.pass = false;
            check.failing_point = static_cast<std::uint32_t>(s);
            check.failing_value = v[s];
            return check;
        }
    }
    return check;
}

// Thrown when an intermediate grid condition inside the reduction fails;
// carries the offending report (with witness points) verbatim.
struct intermediate_check_failure : error {
    std::string report_text;
    explicit intermediate_check_failure(const RegionReport& report)
        : error("reduction: intermediate condition check failed\n" + report.text()),
          report_text(report.text()) {}
};

struct ReductionStage {
    std::string name;
    MultiPoly poly;
};

struct ReductionOptions {
    unsigned grid_resolution = 6;
    bool check_intermediate = true;
    unsigned threads = 1;
};

struct ReductionResult {
    ShiftParams shift;
    std::size_t m_even = 0;
    std::size_t final_arity = 0;
    std::vector<ReductionStage> stages;
    std::vector<RegionReport> reports; // q-conditions, qbar-conditions
    MultiPoly final_poly;

    std::string trace_text() const {
        std::ostringstream os;
        os << "reduction_trace\n";
        os << "k = " << to_string(k()) << "\n";
        os << "k_floor = " << shift.k_floor << "\n";
        os << "final_arity = " << final_arity << "\n";
        for (const auto& s : stages) {
            os << "stage " << s.name << " degree=" << s.poly.total_degree()
               << " terms=" << s.poly.term_count() << "\n";
            os << poly_to_text(s.poly);
        }
        for (const auto& r : reports) os << r.text();
        return os.str();
    }

    const Rational& k() const { return shift.k; }
};

namespace detail {

// Grid reports for the two intermediate condition families. Threshold
// conditions at a single point are checked by exact evaluation.
inline RegionReport banded_point_check(const MultiPoly& q, const std::string& title,
                                       const Rational& box_lo, const Rational& box_hi,
                                       const Rational& high_threshold,
                                       const std::vector<Rational>& base_point,
                                       const Rational& alpha, const Rational& beta,
                                       unsigned grid_res, unsigned threads) {
    RegionReport report;
    report.title = title;
    report.mode = "grid";
    report.params = {{"box_lo", to_string(box_lo)},
                     {"box_hi", to_string(box_hi)},
                     {"high_threshold", to_string(high_threshold)},
                     {"grid_resolution", std::to_string(grid_res)}};

    std::vector<std::vector<Rational>> axes(q.num_vars(), grid_axis(box_lo, box_hi, grid_res));
    EvalFn eval = [&](const std::vector<Rational>& pt) { return q.eval(pt); };
    BandCondition high{"high", "some coordinate >= " + to_string(high_threshold) + " -> value in [0, " +
                                   to_string(alpha) + "]",
                       [&, high_threshold](const std::vector<Rational>& pt) {
                           for (const auto& x : pt)
                               if (x >= high_threshold) return true;
                           return false;
                       },
                       Rational(0), alpha};
    report.conditions.push_back(run_grid_condition(eval, axes, high, threads));

    ConditionOutcome base;
    base.name = "base_point";
    base.region = "value at the base point in [" + to_string(beta) + ", 1]";
    base.points = 1;
    Rational v = q.eval(base_point);
    if (v < beta || v > 1) {
        base.pass = false;
        base.violation_count = 1;
        std::string bound = v < beta ? ("< " + to_string(beta)) : "> 1";
        base.sample.push_back({base_point, v, bound});
    }
    report.conditions.push_back(std::move(base));
    for (const auto& c : report.conditions) report.pass = report.pass && c.pass;
    return report;
}

} // namespace detail

// The full reduction chain:
//   (i)   odd m: fix the last variable at b;
//   (ii)  average over all permutations;
//   (iii) pair the variables, rescale by b, collapse each pair (Laurent);
//   (iv)  shift each t to tbar = (t - 2) ab/(b-a)^2;
//   (v)   replace each tbar by a sum of floor(k) fresh Boolean variables.
// Degree never increases. Intermediate conditions are grid-checked (advisory
// but failures abort with the witness) unless disabled.
//
// Callers are expected to have verified p against the region spec first.
inline ReductionResult reduce_to_nor(const MultiPoly& p, const RobustRegionSpec& spec,
                                     const ReductionOptions& opts = {}) {
    if (p.num_vars() != spec.m)
        throw invariant_violation("reduce_to_nor: polynomial arity != m");

    ReductionResult result;
    result.shift = ShiftParams::from_region(spec);
    result.stages.push_back({"input", p});

    MultiPoly work = p;
    std::size_t m_even = spec.m;
    if (m_even % 2 != 0) {
        work = work.fix_variable(m_even - 1, spec.b);
        m_even -= 1;
        result.stages.push_back({"odd_fix", work});
    }
    result.m_even = m_even;

    work = symmetrize_average_all(work);
    result.stages.push_back({"symmetrized", work});

    MultiPoly q = laurent_symmetrize_pairs(work, PairScaleParams::consecutive(m_even, spec.b));
    result.stages.push_back({"laurent", q});

    const Rational t_hi = spec.n / spec.b + spec.b / spec.n;
    const Rational t_threshold = spec.b / spec.a + spec.a / spec.b;
    if (opts.check_intermediate) {
        RegionReport r = detail::banded_point_check(
            q, "q_conditions", 2, t_hi, t_threshold,
            std::vector<Rational>(q.num_vars(), Rational(2)), spec.alpha, spec.beta,
            opts.grid_resolution, opts.threads);
        result.reports.push_back(r);
        if (!r.pass) throw intermediate_check_failure(r);
    }

    MultiPoly qbar = result.shift.apply_to(q);
    result.stages.push_back({"shifted", qbar});

    if (opts.check_intermediate) {
        RegionReport r = detail::banded_point_check(
            qbar, "qbar_conditions", 0, result.shift.k, 1,
            std::vector<Rational>(qbar.num_vars(), Rational(0)), spec.alpha, spec.beta,
            opts.grid_resolution, opts.threads);
        result.reports.push_back(r);
        if (!r.pass) throw intermediate_check_failure(r);
    }

    result.final_poly = unsymmetrize(qbar, static_cast<unsigned>(result.shift.k_floor));
    result.final_arity = result.final_poly.num_vars();
    result.stages.push_back({"final", result.final_poly});

    if (result.final_poly.total_degree() > p.total_degree())
        throw internal_error("reduce_to_nor: degree increased through the chain");
    return result;
}

// ----------------------------------------------------------------------------
// LP construction of robust region polynomials.

struct RobustLpResult {
    unsigned degree = 0;
    bool feasible = false;
    MultiPoly poly;
    std::vector<FarkasEntry> certificate;
    std::vector<LinearConstraint> rows;
    std::vector<std::string> row_desc;
    std::size_t basis_size = 0;
    unsigned long pivots = 0;

    Rational recombined_gap() const { return certificate_gap(rows, certificate, basis_size); }
};

namespace detail {

inline std::vector<MultiPoly::Exponents> degree_basis(std::size_t m, unsigned d,
                                                      std::size_t guard) {
    Integer count = binomial(d + m, m);
    if (count > static_cast<unsigned long>(guard))
        throw guard_exceeded("robust LP basis guard exceeded: " + count.get_str() + " > " +
                             std::to_string(guard));
    std::vector<MultiPoly::Exponents> basis;
    MultiPoly::Exponents e(m, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
        if (i == m) {
            basis.push_back(e);
            return;
        }
        for (unsigned x = 0; x <= remaining; ++x) {
            e[i] = x;
            self(self, i + 1, remaining - x);
        }
        e[i] = 0;
    };
    rec(rec, 0, d);
    return basis;
}

// Orbit sums over all variable permutations, one representative per sorted
// exponent multiset. The region and chain constraint families are invariant
// under permuting the variables, so a feasible polynomial can always be
// averaged into a symmetric one of the same degree: restricting the LP to
// this basis changes neither feasibility nor the minimal degree, and shrinks
// the system considerably.
inline std::vector<MultiPoly> symmetric_degree_basis(std::size_t m, unsigned d,
                                                     std::size_t guard) {
    std::vector<MultiPoly::Exponents> all = degree_basis(m, d, guard);
    std::map<MultiPoly::Exponents, MultiPoly> reps;
    for (const auto& e : all) {
        MultiPoly::Exponents key = e;
        std::sort(key.begin(), key.end(), std::greater<unsigned>());
        auto it = reps.find(key);
        if (it == reps.end()) it = reps.emplace(key, MultiPoly::zero(m)).first;
        it->second.add_term(e, 1);
    }
    std::vector<MultiPoly> basis;
    basis.reserve(reps.size());
    for (auto& [key, poly] : reps) basis.push_back(std::move(poly));
    return basis;
}

inline std::string point_string(const std::vector<Rational>& pt) {
    std::string s = "(";
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i) s += ", ";
        s += to_string(pt[i]);
    }
    return s + ")";
}

// Accumulates constraint rows, dropping exact duplicates and keeping only
// the strongest right-hand side for repeated coefficient vectors.
struct RowAccumulator {
    std::vector<LinearConstraint> rows;
    std::vector<std::string> desc;
    std::map<std::vector<Rational>, std::size_t> index;

    void add(std::vector<Rational> coeffs, Rational rhs, std::string what) {
        auto it = index.find(coeffs);
        if (it == index.end()) {
            index.emplace(coeffs, rows.size());
            rows.push_back({std::move(coeffs), std::move(rhs)});
            desc.push_back(std::move(what));
        } else if (rhs > rows[it->second].rhs) {
            rows[it->second].rhs = std::move(rhs);
            desc[it->second] = std::move(what);
        }
    }
};

} // namespace detail

// One feasibility LP for a degree-<= d polynomial obeying the region
// conditions on the 1/res lattice. With `include_chain_conditions` the system
// also pins the reduction chain's intermediate grids (q over [2, n/b + b/n],
// qbar over [0, k]) through the exact linear functionals induced by the
// chain, which in particular forces the final NOR values into their bands.
// Requires even m in chain mode.
inline RobustLpResult robust_poly_lp(const RobustRegionSpec& spec, unsigned degree,
                                     unsigned grid_res, bool include_chain_conditions,
                                     std::size_t basis_guard = 50000) {
    if (include_chain_conditions && spec.m % 2 != 0)
        throw invariant_violation("chain-constrained construction needs even m");

    RobustLpResult out;
    out.degree = degree;
    std::vector<MultiPoly> basis = detail::symmetric_degree_basis(spec.m, degree, basis_guard);
    out.basis_size = basis.size();

    detail::RowAccumulator acc;
    auto add_band = [&](const std::vector<Rational>& coeffs, const Rational& lo,
                        const Rational& hi, const std::string& what) {
        std::vector<Rational> neg(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k) neg[k] = -coeffs[k];
        acc.add(coeffs, lo, what + " >= " + to_string(lo));
        acc.add(std::move(neg), -hi, what + " <= " + to_string(hi));
    };

    // Region conditions on the lattice.
    {
        std::vector<Rational> axis = grid_axis(0, spec.n, grid_res);
        std::vector<std::size_t> idx(spec.m, 0);
        for (;;) {
            std::vector<Rational> pt(spec.m);
            for (std::size_t i = 0; i < spec.m; ++i) pt[i] = axis[idx[i]];
            bool case1 = false, case2 = true;
            for (const auto& x : pt) {
                if (x <= spec.a) case1 = true;
                if (x < spec.b) case2 = false;
            }
            if (case1 || case2) {
                std::vector<Rational> coeffs(basis.size());
                for (std::size_t k = 0; k < basis.size(); ++k) coeffs[k] = basis[k].eval(pt);
                if (case1)
                    add_band(coeffs, 0, spec.alpha, "p" + detail::point_string(pt));
                else
                    add_band(coeffs, spec.beta, 1, "p" + detail::point_string(pt));
            }
            std::size_t i = 0;
            while (i < spec.m && ++idx[i] == axis.size()) idx[i++] = 0;
            if (i == spec.m) break;
        }
    }

    if (include_chain_conditions) {
        ShiftParams shift = ShiftParams::from_region(spec);
        const std::size_t half = spec.m / 2;
        // Push every basis polynomial through the chain once; all steps are
        // linear in the coefficients.
        std::vector<MultiPoly> q_of, qbar_of;
        q_of.reserve(basis.size());
        for (const auto& phi : basis) {
            MultiPoly q = laurent_symmetrize_pairs(symmetrize_average_all(phi),
                                                   PairScaleParams::consecutive(spec.m, spec.b));
            qbar_of.push_back(shift.apply_to(q));
            q_of.push_back(std::move(q));
        }

        auto add_chain_rows = [&](const std::vector<MultiPoly>& funcs, const Rational& lo_ax,
                                  const Rational& hi_ax, const Rational& threshold,
                                  const std::vector<Rational>& base_point,
                                  const std::string& tag) {
            std::vector<Rational> axis = grid_axis(lo_ax, hi_ax, grid_res);
            std::vector<std::size_t> idx(half, 0);
            for (;;) {
                std::vector<Rational> pt(half);
                for (std::size_t i = 0; i < half; ++i) pt[i] = axis[idx[i]];
                bool high = false;
                for (const auto& x : pt)
                    if (x >= threshold) high = true;
                if (high) {
                    std::vector<Rational> coeffs(basis.size());
                    for (std::size_t k = 0; k < basis.size(); ++k) coeffs[k] = funcs[k].eval(pt);
                    add_band(coeffs, 0, spec.alpha, tag + detail::point_string(pt));
                }
                std::size_t i = 0;
                while (i < half && ++idx[i] == axis.size()) idx[i++] = 0;
                if (i == half) break;
            }
            std::vector<Rational> coeffs(basis.size());
            for (std::size_t k = 0; k < basis.size(); ++k) coeffs[k] = funcs[k].eval(base_point);
            add_band(coeffs, spec.beta, 1, tag + detail::point_string(base_point));
        };

        add_chain_rows(q_of, 2, spec.n / spec.b + spec.b / spec.n,
                       spec.b / spec.a + spec.a / spec.b,
                       std::vector<Rational>(half, Rational(2)), "q");
        add_chain_rows(qbar_of, 0, shift.k, 1, std::vector<Rational>(half, Rational(0)),
                       "qbar");
    }

    out.rows = std::move(acc.rows);
    out.row_desc = std::move(acc.desc);

    FeasibilityOutcome sol = solve_ge_system(out.rows, basis.size());
    out.feasible = sol.feasible;
    out.pivots = sol.pivots;
    if (sol.feasible) {
        MultiPoly p(spec.m);
        for (std::size_t k = 0; k < basis.size(); ++k) p += basis[k].scaled(sol.point[k]);
        out.poly = std::move(p);
    } else {
        out.certificate = std::move(sol.certificate);
        out.recombined_gap();
    }
    return out;
}

// Ascending-degree search for the smallest feasible construction.
struct RobustConstruction {
    bool found = false;
    unsigned degree = 0;
    MultiPoly poly;
    std::vector<RobustLpResult> attempts; // one per degree tried, in order
};

inline RobustConstruction construct_robust_poly(const RobustRegionSpec& spec, unsigned grid_res,
                                                bool include_chain_conditions, unsigned max_degree,
                                                std::size_t basis_guard = 50000) {
    RobustConstruction result;
    for (unsigned d = 0; d <= max_degree; ++d) {
        RobustLpResult r =
            robust_poly_lp(spec, d, grid_res, include_chain_conditions, basis_guard);
        bool feasible = r.feasible;
        if (feasible) {
            result.found = true;
            result.degree = d;
            result.poly = r.poly;
        }
        result.attempts.push_back(std::move(r));
        if (feasible) break;
    }
    return result;
}

} // namespace adeg
