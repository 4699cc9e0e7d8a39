#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "adeg/errors.hpp"

namespace adeg {

// All core arithmetic is exact. GMP's canonical mpq keeps values in lowest
// terms with a positive denominator, which is exactly the representation the
// rest of the library relies on.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw invariant_violation("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer floor_rational(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Rational pow_rational(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den_mpz_t(), e);
    return r; // base canonical => powers canonical
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer b;
    if (k > n) return 0;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

// Canonical textual form: "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r) {
    return r.get_str();
}

// Always prints the denominator; used by the polynomial file format.
inline std::string to_fraction_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Parses "a/b" or "a". Rejects anything mpq does not accept exactly.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw parse_error("empty rational literal");
    Rational r;
    if (r.set_str(std::string(text), 10) != 0)
        throw parse_error("bad rational literal: '" + std::string(text) + "'");
    if (r.get_den() == 0) throw parse_error("zero denominator: '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

// Decimal rendering for human-readable report lines only; never feeds back
// into computation.
inline double approx(const Rational& r) { return r.get_d(); }

} // namespace adeg
