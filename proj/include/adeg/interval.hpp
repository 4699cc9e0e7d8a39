#pragma once

#include <string>

#include "adeg/errors.hpp"
#include "adeg/rational.hpp"

namespace adeg {

// Closed interval with exact rational endpoints. Used wherever an irrational
// quantity (logarithm, square root) enters a comparison: the bracket is
// tightened until the comparison is decided.
struct RatInterval {
    Rational lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rational v) : lo(v), hi(std::move(v)) {}
    RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw invariant_violation("interval with lo > hi");
    }

    Rational width() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
        Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
        return {lo, hi};
    }

    // Requires a sign-definite positive divisor.
    friend RatInterval operator/(const RatInterval& a, const RatInterval& b) {
        if (b.lo <= 0) throw invariant_violation("interval division needs a positive divisor");
        Rational p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }

    RatInterval pow(unsigned long e) const {
        if (e == 0) return RatInterval(Rational(1));
        if (lo >= 0) return {pow_rational(lo, e), pow_rational(hi, e)};
        if (hi <= 0) {
            Rational pl = pow_rational(lo, e), ph = pow_rational(hi, e);
            return e % 2 == 0 ? RatInterval{ph, pl} : RatInterval{pl, ph};
        }
        // straddles zero
        Rational pl = pow_rational(lo, e), ph = pow_rational(hi, e);
        if (e % 2 == 0) return {Rational(0), std::max(pl, ph)};
        return {pl, ph};
    }

    std::string to_string() const {
        return "[" + adeg::to_string(lo) + ", " + adeg::to_string(hi) + "]";
    }
};

enum class Decision { True, False, Unknown };

// a <= b over all representatives.
inline Decision interval_le(const RatInterval& a, const RatInterval& b) {
    if (a.hi <= b.lo) return Decision::True;
    if (a.lo > b.hi) return Decision::False;
    return Decision::Unknown;
}

// ln(1/(1-v)) = sum_{j>=1} v^j / j for 0 <= v < 1; partial sums bound from
// below, the geometric tail bounds from above.
inline RatInterval log_one_minus_inv(const Rational& v, unsigned terms) {
    if (v < 0 || v >= 1) throw invariant_violation("series argument out of range");
    if (v == 0) return RatInterval(Rational(0));
    Rational sum = 0;
    Rational power = 1;
    for (unsigned j = 1; j <= terms; ++j) {
        power *= v;
        sum += power / Rational(static_cast<long>(j));
    }
    Rational tail = power * v / (Rational(static_cast<long>(terms + 1)) * (1 - v));
    return {sum, sum + tail};
}

inline RatInterval ln2_interval(unsigned terms) { return log_one_minus_inv(rat(1, 2), terms); }

// Certified bracket of the natural logarithm of a positive rational.
inline RatInterval ln_interval(Rational x, unsigned terms = 32) {
    if (x <= 0) throw invariant_violation("ln of a nonpositive value");
    if (x == 1) return RatInterval(Rational(0));
    if (x < 1) {
        RatInterval r = ln_interval(1 / x, terms);
        return {-r.hi, -r.lo};
    }
    long k = 0;
    while (x >= 2) {
        x /= 2;
        ++k;
    }
    // x in [1, 2): ln x = ln(1/(1-v)) with v = 1 - 1/x in [0, 1/2)
    RatInterval r = log_one_minus_inv(1 - 1 / x, terms);
    if (k > 0) {
        RatInterval l2 = ln2_interval(terms);
        RatInterval kl2{l2.lo * Rational(k), l2.hi * Rational(k)};
        r = r + kl2;
    }
    return r;
}

// Bracket of sqrt(x) by bisection; width halves per step. Exact for squares.
inline RatInterval sqrt_interval(const Rational& x, unsigned steps = 64) {
    if (x < 0) throw invariant_violation("sqrt of a negative value");
    if (x == 0) return RatInterval(Rational(0));
    if (mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t())) {
        Rational r;
        mpz_sqrt(r.get_num().get_mpz_t(), x.get_num_mpz_t());
        mpz_sqrt(r.get_den().get_mpz_t(), x.get_den_mpz_t());
        return RatInterval(r);
    }
    Rational lo = 0, hi = x < 1 ? Rational(1) : x;
    for (unsigned i = 0; i < steps; ++i) {
        Rational mid = (lo + hi) / 2;
        if (mid * mid <= x) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

} // namespace adeg
