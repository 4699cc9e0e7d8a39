#pragma once

#include <sstream>
#include <string>

#include "adeg/errors.hpp"
#include "adeg/interval.hpp"
#include "adeg/rational.hpp"

namespace adeg {

// (1 - 1/(6n))^n >= 5/6, exact rational arithmetic. Holds with equality at
// n = 1.
inline bool survival_bound_holds(unsigned long n) {
    if (n == 0) throw invariant_violation("survival bound needs n >= 1");
    Rational base = 1 - rat(1, static_cast<long>(6 * n));
    return pow_rational(base, n) >= rat(5, 6);
}

// m (1 - 2 ln m / n)^n <= 1/m, decided by tightening rational brackets of
// ln m until the comparison resolves.
struct UnionBoundCheck {
    bool holds = false;
    RatInterval value;    // bracket of m (1 - 2 ln m / n)^n
    unsigned terms_used = 0;
};

inline UnionBoundCheck union_bound_check(unsigned long m, unsigned long n) {
    if (m < 10) throw invariant_violation("union bound check needs m >= 10");
    const Rational mr(static_cast<long>(m)), nr(static_cast<long>(n));
    for (unsigned terms = 24; terms <= 384; terms *= 2) {
        RatInterval lnm = ln_interval(mr, terms);
        if (!(nr > 2 * lnm.hi)) {
            if (nr <= 2 * lnm.lo)
                throw invariant_violation("union bound check needs n > 2 ln m");
            continue; // undecided precondition; tighten
        }
        RatInterval base{1 - 2 * lnm.hi / nr, 1 - 2 * lnm.lo / nr};
        RatInterval value = RatInterval(mr) * base.pow(n);
        UnionBoundCheck out;
        out.value = value;
        out.terms_used = terms;
        Decision d = interval_le(value, RatInterval(1 / mr));
        if (d == Decision::True) {
            out.holds = true;
            return out;
        }
        if (d == Decision::False) {
            out.holds = false;
            return out;
        }
        // Unknown: tighten and retry.
    }
    throw internal_error("union bound comparison did not resolve at maximum precision");
}

// Combined report for one (m, n): the union bound, the survival bound, and
// the two exact constant identities behind the collapsed approximator's
// bands, 1/3 + 1/6 = 1/2 and 3/5 <= (2/3)(1 - 1/m).
struct ProbabilityBoundReport {
    unsigned long m = 0, n = 0;
    bool union_bound = false;
    RatInterval union_value;
    bool survival_bound = false;
    Rational survival_value;
    bool half_identity = false;
    bool three_fifths_bound = false;
    bool pass = false;

    std::string text() const {
        std::ostringstream os;
        os << "report probability_bounds\n";
        os << "m = " << m << "\n";
        os << "n = " << n << "\n";
        os << "check union_bound m(1-2ln(m)/n)^n <= 1/m value=" << union_value.to_string()
           << " outcome=" << (union_bound ? "pass" : "fail") << "\n";
        os << "check survival_bound (1-1/(6n))^n >= 5/6 value=" << to_string(survival_value)
           << " outcome=" << (survival_bound ? "pass" : "fail") << "\n";
        os << "check half_identity 1/3 + 1/6 == 1/2 outcome="
           << (half_identity ? "pass" : "fail") << "\n";
        os << "check three_fifths 3/5 <= (2/3)(1-1/m) outcome="
           << (three_fifths_bound ? "pass" : "fail") << "\n";
        os << "overall = " << (pass ? "pass" : "fail") << "\n";
        return os.str();
    }
};

inline ProbabilityBoundReport probability_bound_checks(unsigned long m, unsigned long n) {
    ProbabilityBoundReport report;
    report.m = m;
    report.n = n;
    UnionBoundCheck ub = union_bound_check(m, n);
    report.union_bound = ub.holds;
    report.union_value = ub.value;
    report.survival_bound = survival_bound_holds(n);
    report.survival_value = pow_rational(1 - rat(1, static_cast<long>(6 * n)), n);
    report.half_identity = (rat(1, 3) + rat(1, 6) == rat(1, 2));
    report.three_fifths_bound =
        rat(3, 5) <= rat(2, 3) * (1 - rat(1, static_cast<long>(m)));
    report.pass = report.union_bound && report.survival_bound && report.half_identity &&
                  report.three_fifths_bound;
    return report;
}

// The composed lower-bound expression for the AND-of-ORs approximate degree:
//   main case:    (n - 2 ln m) / (2 ln m - 1/6) * sqrt(m / (6 n))
//   trivial case: sqrt(m) when n <= 24 ln^2 m, sqrt(n) when m < 10,
// with every irrational bracketed by rational intervals.
struct DegreeLowerBound {
    enum class Case { Main, TrivialSqrtM, TrivialSqrtN };
    Case branch = Case::Main;
    RatInterval value;

    std::string case_name() const {
        switch (branch) {
            case Case::Main: return "main";
            case Case::TrivialSqrtM: return "trivial_sqrt_m";
            case Case::TrivialSqrtN: return "trivial_sqrt_n";
        }
        return "?";
    }

    std::string text() const {
        std::ostringstream os;
        os << "report degree_lower_bound\n";
        os << "case = " << case_name() << "\n";
        os << "value = " << value.to_string() << "\n";
        return os.str();
    }
};

inline DegreeLowerBound andor_degree_lower_bound(unsigned long m, unsigned long n,
                                                 unsigned sqrt_steps = 64) {
    if (m < 2 || n < 1) throw invariant_violation("degree lower bound needs m >= 2, n >= 1");
    DegreeLowerBound out;
    const Rational mr(static_cast<long>(m)), nr(static_cast<long>(n));

    if (m < 10) {
        out.branch = DegreeLowerBound::Case::TrivialSqrtN;
        out.value = sqrt_interval(nr, sqrt_steps);
        return out;
    }

    // Decide n <= 24 ln^2 m by tightening; equality cannot occur since ln m
    // is irrational for integer m >= 2.
    for (unsigned terms = 24; terms <= 768; terms *= 2) {
        RatInterval lnm = ln_interval(mr, terms);
        RatInterval bound = RatInterval(Rational(24)) * (lnm * lnm);
        Decision d = interval_le(RatInterval(nr), bound);
        if (d == Decision::Unknown) continue;
        if (d == Decision::True) {
            out.branch = DegreeLowerBound::Case::TrivialSqrtM;
            out.value = sqrt_interval(mr, sqrt_steps);
            return out;
        }
        out.branch = DegreeLowerBound::Case::Main;
        RatInterval numer = RatInterval(nr) - RatInterval(Rational(2)) * lnm;
        RatInterval denom = RatInterval(Rational(2)) * lnm - RatInterval(rat(1, 6));
        RatInterval root = sqrt_interval(mr / (6 * nr), sqrt_steps);
        out.value = (numer / denom) * root;
        return out;
    }
    throw internal_error("trivial-case comparison did not resolve at maximum precision");
}

} // namespace adeg
