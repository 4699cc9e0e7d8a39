#pragma once

#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

#include "adeg/errors.hpp"
#include "adeg/multipoly.hpp"
#include "adeg/rational.hpp"

namespace adeg {

// Univariate polynomial with integer (possibly negative) exponents.
// Degree is the maximum |exponent| over stored terms.
class LaurentPoly {
public:
    using TermMap = std::map<long, Rational>;

    LaurentPoly() = default;

    static LaurentPoly constant(const Rational& c) {
        LaurentPoly p;
        p.add_term(0, c);
        return p;
    }

    static LaurentPoly term(long exponent, const Rational& c) {
        LaurentPoly p;
        p.add_term(exponent, c);
        return p;
    }

    void add_term(long exponent, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(exponent);
        if (it == terms_.end()) {
            terms_.emplace(exponent, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(long exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    unsigned degree() const {
        long d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, std::labs(e));
        return static_cast<unsigned>(d);
    }

    // Coefficient symmetry a_i == a_{-i} for every i.
    bool is_exponent_symmetric() const {
        for (const auto& [e, c] : terms_)
            if (coefficient(-e) != c) return false;
        return true;
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    LaurentPoly scaled(const Rational& s) const {
        LaurentPoly r;
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    Rational eval(const Rational& s) const {
        if (s == 0 && !terms_.empty() && terms_.begin()->first < 0)
            throw invariant_violation("Laurent evaluation at 0 with negative exponents");
        Rational inv = 0;
        if (!terms_.empty() && terms_.begin()->first < 0) inv = 1 / s;
        Rational sum = 0;
        for (const auto& [e, c] : terms_) {
            if (e >= 0)
                sum += c * pow_rational(s, static_cast<unsigned long>(e));
            else
                sum += c * pow_rational(inv, static_cast<unsigned long>(-e));
        }
        return sum;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << adeg::to_string(c);
            if (e != 0) os << " s^" << e;
        }
        return os.str();
    }

private:
    TermMap terms_;
};

// Substitutes a Laurent polynomial for the single variable of q.
inline LaurentPoly compose_univariate(const MultiPoly& q, const LaurentPoly& arg) {
    if (q.num_vars() != 1) throw invariant_violation("compose_univariate needs a univariate polynomial");
    // Iterative powers; degrees here are small by construction.
    unsigned max_e = q.total_degree();
    std::vector<LaurentPoly> powers;
    powers.push_back(LaurentPoly::constant(1));
    for (unsigned i = 1; i <= max_e; ++i) powers.push_back(powers.back() * arg);
    LaurentPoly r;
    for (const auto& [e, c] : q.terms()) r += powers[e[0]].scaled(c);
    return r;
}

// p(s, 1/s) for a bivariate polynomial.
inline LaurentPoly laurent_restrict_bivariate(const MultiPoly& p) {
    if (p.num_vars() != 2) throw invariant_violation("laurent_restrict_bivariate needs 2 variables");
    LaurentPoly r;
    for (const auto& [e, c] : p.terms())
        r.add_term(static_cast<long>(e[0]) - static_cast<long>(e[1]), c);
    return r;
}

} // namespace adeg
