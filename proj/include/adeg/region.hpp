#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "adeg/bernstein.hpp"
#include "adeg/errors.hpp"
#include "adeg/multipoly.hpp"
#include "adeg/rational.hpp"

namespace adeg {

// Parameters of the robust region conditions over the box [0, n]^m:
//   1. some x_i <= a      =>  p in [0, alpha]
//   2. all  x_i >= b      =>  p in [beta, 1]
struct RobustRegionSpec {
    std::size_t m;
    Rational n, a, b, alpha, beta;

    RobustRegionSpec(std::size_t m_, Rational n_, Rational a_, Rational b_, Rational alpha_,
                     Rational beta_)
        : m(m_), n(std::move(n_)), a(std::move(a_)), b(std::move(b_)), alpha(std::move(alpha_)),
          beta(std::move(beta_)) {
        if (m < 2) throw invariant_violation("region spec violates: m >= 2");
        if (!(0 < a)) throw invariant_violation("region spec violates: 0 < a");
        if (!(a < b)) throw invariant_violation("region spec violates: a < b");
        if (!(b < n)) throw invariant_violation("region spec violates: b < n");
        if (!(b / a < n / b)) throw invariant_violation("region spec violates: b/a < n/b");
        if (!(0 < alpha && alpha < beta && beta < 1))
            throw invariant_violation("region spec violates: 0 < alpha < beta < 1");
    }
};

enum class CheckMode { Grid, Certified };

inline std::string check_mode_name(CheckMode m) { return m == CheckMode::Grid ? "grid" : "certified"; }

// Multiples of 1/res inside [lo, hi], plus the exact endpoints.
inline std::vector<Rational> grid_axis(const Rational& lo, const Rational& hi, unsigned res) {
    if (res == 0) throw invariant_violation("grid resolution must be positive");
    if (lo > hi) throw invariant_violation("grid axis with lo > hi");
    Integer jlo, jhi;
    Rational slo = lo * static_cast<long>(res), shi = hi * static_cast<long>(res);
    mpz_cdiv_q(jlo.get_mpz_t(), slo.get_num_mpz_t(), slo.get_den_mpz_t());
    mpz_fdiv_q(jhi.get_mpz_t(), shi.get_num_mpz_t(), shi.get_den_mpz_t());
    std::vector<Rational> values;
    Rational first = Rational(jlo) / static_cast<long>(res);
    if (lo < first) values.push_back(lo);
    for (Integer j = jlo; j <= jhi; ++j) values.push_back(Rational(j) / static_cast<long>(res));
    if (values.empty() || values.back() < hi) values.push_back(hi);
    return values;
}

struct Violation {
    std::vector<Rational> point;
    Rational value;
    std::string bound;
};

struct ConditionOutcome {
    std::string name;
    std::string region;
    CheckMode mode = CheckMode::Grid;
    bool pass = true;
    std::size_t points = 0;          // grid points that fell in the region
    std::size_t violation_count = 0;
    std::vector<Violation> sample;   // first few violations
    std::vector<CertifyResult> certs; // per-box results in certified mode
};

struct RegionReport {
    bool pass = true;
    std::string title;
    std::string mode;
    std::vector<std::pair<std::string, std::string>> params; // stable key order
    std::vector<ConditionOutcome> conditions;

    std::string text() const {
        std::ostringstream os;
        os << "report " << title << "\n";
        os << "mode = " << mode << "\n";
        for (const auto& [k, v] : params) os << k << " = " << v << "\n";
        for (const auto& c : conditions) {
            os << "condition " << c.name << " region=\"" << c.region << "\"";
            if (c.mode == CheckMode::Grid) os << " points=" << c.points;
            os << " violations=" << c.violation_count
               << " outcome=" << (c.pass ? "pass" : "fail") << "\n";
            for (const auto& v : c.sample) {
                os << "  violation at (";
                for (std::size_t i = 0; i < v.point.size(); ++i) {
                    if (i) os << ", ";
                    os << to_string(v.point[i]);
                }
                os << ") value=" << to_string(v.value) << " bound=" << v.bound << "\n";
            }
        }
        os << "overall = " << (pass ? "pass" : "fail") << "\n";
        if (mode == "grid")
            os << "note = grid violations are definitive; grid success is not a proof\n";
        return os.str();
    }
};

namespace detail {

// One banded condition: when `applies` holds at a point, the value must lie
// in [lo, hi].
struct BandCondition {
    std::string name;
    std::string region;
    std::function<bool(const std::vector<Rational>&)> applies;
    Rational lo, hi;
};

using EvalFn = std::function<Rational(const std::vector<Rational>&)>;

inline ConditionOutcome run_grid_condition(const EvalFn& eval,
                                           const std::vector<std::vector<Rational>>& axes,
                                           const BandCondition& cond, unsigned threads,
                                           std::size_t sample_cap = 8) {
    ConditionOutcome out;
    out.name = cond.name;
    out.region = cond.region;
    out.mode = CheckMode::Grid;

    // Flatten the lattice for deterministic chunked evaluation.
    std::size_t total = 1;
    for (const auto& ax : axes) total *= ax.size();

    auto point_at = [&](std::size_t flat) {
        std::vector<Rational> pt(axes.size());
        for (std::size_t i = axes.size(); i-- > 0;) {
            pt[i] = axes[i][flat % axes[i].size()];
            flat /= axes[i].size();
        }
        return pt;
    };

    const unsigned nthreads = std::max(1u, threads);
    std::vector<std::vector<std::pair<std::size_t, Violation>>> found(nthreads);
    std::vector<std::size_t> in_region(nthreads, 0);

    auto worker = [&](unsigned tid) {
        for (std::size_t flat = tid; flat < total; flat += nthreads) {
            std::vector<Rational> pt = point_at(flat);
            if (!cond.applies(pt)) continue;
            ++in_region[tid];
            Rational v = eval(pt);
            if (v < cond.lo || v > cond.hi) {
                std::string bound = v < cond.lo ? ("< " + to_string(cond.lo))
                                                : ("> " + to_string(cond.hi));
                found[tid].push_back({flat, Violation{pt, v, bound}});
            }
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::vector<std::pair<std::size_t, Violation>> all;
    for (auto& f : found)
        for (auto& v : f) all.push_back(std::move(v));
    std::sort(all.begin(), all.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    for (std::size_t t = 0; t < nthreads; ++t) out.points += in_region[t];
    out.violation_count = all.size();
    out.pass = all.empty();
    for (std::size_t i = 0; i < all.size() && i < sample_cap; ++i)
        out.sample.push_back(std::move(all[i].second));
    return out;
}

} // namespace detail

// Checks the two region conditions.
//  - Grid mode evaluates p exactly on the 1/res lattice; a violation is a
//    definitive counterexample, success is only evidence.
//  - Certified mode proves the bounds over the continuous regions with
//    Bernstein enclosures and box subdivision, or produces a counterexample
//    point / an undecided sub-box.
inline RegionReport verify_region_conditions(const MultiPoly& p, const RobustRegionSpec& spec,
                                             CheckMode mode, unsigned grid_res = 6,
                                             unsigned max_depth = 10, unsigned threads = 1) {
    if (p.num_vars() != spec.m)
        throw invariant_violation("verify_region_conditions: polynomial arity != m");

    RegionReport report;
    report.title = "region_conditions";
    report.mode = check_mode_name(mode);
    report.params = {{"m", std::to_string(spec.m)},
                     {"n", to_string(spec.n)},
                     {"a", to_string(spec.a)},
                     {"b", to_string(spec.b)},
                     {"alpha", to_string(spec.alpha)},
                     {"beta", to_string(spec.beta)}};
    if (mode == CheckMode::Grid)
        report.params.emplace_back("grid_resolution", std::to_string(grid_res));
    else
        report.params.emplace_back("max_depth", std::to_string(max_depth));

    const std::string region1 = "some x_i <= " + to_string(spec.a) + " -> p in [0, " +
                                to_string(spec.alpha) + "]";
    const std::string region2 = "all x_i >= " + to_string(spec.b) + " -> p in [" +
                                to_string(spec.beta) + ", 1]";

    if (mode == CheckMode::Grid) {
        std::vector<std::vector<Rational>> axes(spec.m, grid_axis(0, spec.n, grid_res));
        detail::EvalFn eval = [&](const std::vector<Rational>& pt) { return p.eval(pt); };
        detail::BandCondition c1{"case1", region1,
                                 [&](const std::vector<Rational>& pt) {
                                     for (const auto& x : pt)
                                         if (x <= spec.a) return true;
                                     return false;
                                 },
                                 Rational(0), spec.alpha};
        detail::BandCondition c2{"case2", region2,
                                 [&](const std::vector<Rational>& pt) {
                                     for (const auto& x : pt)
                                         if (x < spec.b) return false;
                                     return true;
                                 },
                                 spec.beta, Rational(1)};
        report.conditions.push_back(detail::run_grid_condition(eval, axes, c1, threads));
        report.conditions.push_back(detail::run_grid_condition(eval, axes, c2, threads));
    } else {
        // Case 1 region is the union over i of { x_i in [0, a] } within the box.
        ConditionOutcome c1;
        c1.name = "case1";
        c1.region = region1;
        c1.mode = CheckMode::Certified;
        for (std::size_t i = 0; i < spec.m; ++i) {
            Box box = Box::cube(spec.m, 0, spec.n);
            box.ranges[i] = {Rational(0), spec.a};
            CertifyResult r = certify_range(p, box, 0, spec.alpha, max_depth);
            if (!r.certified()) {
                c1.pass = false;
                ++c1.violation_count;
                if (r.status == CertifyResult::Status::Counterexample)
                    c1.sample.push_back({r.counterexample, r.counterexample_value,
                                         "outside [0, " + to_string(spec.alpha) + "]"});
            }
            c1.certs.push_back(std::move(r));
        }
        ConditionOutcome c2;
        c2.name = "case2";
        c2.region = region2;
        c2.mode = CheckMode::Certified;
        {
            Box box = Box::cube(spec.m, spec.b, spec.n);
            CertifyResult r = certify_range(p, box, spec.beta, 1, max_depth);
            if (!r.certified()) {
                c2.pass = false;
                ++c2.violation_count;
                if (r.status == CertifyResult::Status::Counterexample)
                    c2.sample.push_back({r.counterexample, r.counterexample_value,
                                         "outside [" + to_string(spec.beta) + ", 1]"});
            }
            c2.certs.push_back(std::move(r));
        }
        report.conditions.push_back(std::move(c1));
        report.conditions.push_back(std::move(c2));
    }
    for (const auto& c : report.conditions) report.pass = report.pass && c.pass;
    return report;
}

// The weaker region family: case 1 only over points whose every coordinate
// lies in [0, a] u [b, n] (with at least one coordinate <= a); case 2 only at
// the single point (b, ..., b).
inline RegionReport weaker_conditions_check(const MultiPoly& p, const RobustRegionSpec& spec,
                                            CheckMode mode, unsigned grid_res = 6,
                                            unsigned max_depth = 10, unsigned threads = 1) {
    if (p.num_vars() != spec.m)
        throw invariant_violation("weaker_conditions_check: polynomial arity != m");

    RegionReport report;
    report.title = "weaker_conditions";
    report.mode = check_mode_name(mode);
    report.params = {{"m", std::to_string(spec.m)},
                     {"n", to_string(spec.n)},
                     {"a", to_string(spec.a)},
                     {"b", to_string(spec.b)},
                     {"alpha", to_string(spec.alpha)},
                     {"beta", to_string(spec.beta)}};
    if (mode == CheckMode::Grid)
        report.params.emplace_back("grid_resolution", std::to_string(grid_res));
    else
        report.params.emplace_back("max_depth", std::to_string(max_depth));

    const std::string region1 = "all x_i in [0, " + to_string(spec.a) + "] u [" +
                                to_string(spec.b) + ", " + to_string(spec.n) +
                                "], some x_i <= " + to_string(spec.a) + " -> p in [0, " +
                                to_string(spec.alpha) + "]";

    if (mode == CheckMode::Grid) {
        std::vector<Rational> low = grid_axis(0, spec.a, grid_res);
        std::vector<Rational> high = grid_axis(spec.b, spec.n, grid_res);
        std::vector<Rational> both = low;
        both.insert(both.end(), high.begin(), high.end());
        std::vector<std::vector<Rational>> axes(spec.m, both);
        detail::EvalFn eval = [&](const std::vector<Rational>& pt) { return p.eval(pt); };
        detail::BandCondition c1{"case1", region1,
                                 [&](const std::vector<Rational>& pt) {
                                     for (const auto& x : pt)
                                         if (x <= spec.a) return true;
                                     return false;
                                 },
                                 Rational(0), spec.alpha};
        report.conditions.push_back(detail::run_grid_condition(eval, axes, c1, threads));
    } else {
        ConditionOutcome c1;
        c1.name = "case1";
        c1.region = region1;
        c1.mode = CheckMode::Certified;
        for (std::size_t mask = 1; mask < (std::size_t{1} << spec.m); ++mask) {
            Box box = Box::cube(spec.m, spec.b, spec.n);
            for (std::size_t i = 0; i < spec.m; ++i)
                if ((mask >> i) & 1u) box.ranges[i] = {Rational(0), spec.a};
            CertifyResult r = certify_range(p, box, 0, spec.alpha, max_depth);
            if (!r.certified()) {
                c1.pass = false;
                ++c1.violation_count;
                if (r.status == CertifyResult::Status::Counterexample)
                    c1.sample.push_back({r.counterexample, r.counterexample_value,
                                         "outside [0, " + to_string(spec.alpha) + "]"});
            }
            c1.certs.push_back(std::move(r));
        }
        report.conditions.push_back(std::move(c1));
    }

    // Case 2 reduces to one exact evaluation at (b, ..., b) in either mode.
    ConditionOutcome c2;
    c2.name = "case2";
    c2.region = "x = (b, ..., b) -> p in [" + to_string(spec.beta) + ", 1]";
    c2.mode = mode;
    c2.points = 1;
    Rational v = p.eval(std::vector<Rational>(spec.m, spec.b));
    if (v < spec.beta || v > 1) {
        c2.pass = false;
        c2.violation_count = 1;
        std::string bound = v < spec.beta ? ("< " + to_string(spec.beta)) : "> 1";
        c2.sample.push_back({std::vector<Rational>(spec.m, spec.b), v, bound});
    }
    report.conditions.push_back(std::move(c2));

    for (const auto& c : report.conditions) report.pass = report.pass && c.pass;
    return report;
}

} // namespace adeg
