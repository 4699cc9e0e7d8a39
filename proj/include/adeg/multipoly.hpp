#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adeg/errors.hpp"
#include "adeg/rational.hpp"

namespace adeg {

// Sparse multivariate polynomial with exact rational coefficients.
//
// Terms are keyed by exponent vectors (one nonnegative exponent per
// variable). The map never stores a zero coefficient, so structural equality
// of the representation coincides with polynomial equality. Values are
// immutable in spirit: every operation returns a new polynomial.
class MultiPoly {
public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, Rational>;

    MultiPoly() : num_vars_(0) {}
    explicit MultiPoly(std::size_t num_vars) : num_vars_(num_vars) {}

    static MultiPoly zero(std::size_t num_vars) { return MultiPoly(num_vars); }

    static MultiPoly constant(std::size_t num_vars, const Rational& c) {
        MultiPoly p(num_vars);
        p.add_term(Exponents(num_vars, 0), c);
        return p;
    }

    static MultiPoly variable(std::size_t num_vars, std::size_t index) {
        if (index >= num_vars) throw invariant_violation("variable index out of range");
        MultiPoly p(num_vars);
        Exponents e(num_vars, 0);
        e[index] = 1;
        p.add_term(e, 1);
        return p;
    }

    static MultiPoly monomial(std::size_t num_vars, const Exponents& exps, const Rational& c) {
        if (exps.size() != num_vars) throw invariant_violation("exponent vector length mismatch");
        MultiPoly p(num_vars);
        p.add_term(exps, c);
        return p;
    }

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // Adds c * x^exps, erasing the term if the sum cancels.
    void add_term(const Exponents& exps, const Rational& c) {
        if (exps.size() != num_vars_) throw invariant_violation("exponent vector length mismatch");
        if (c == 0) return;
        auto it = terms_.find(exps);
        if (it == terms_.end()) {
            terms_.emplace(exps, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Exponents& exps) const {
        auto it = terms_.find(exps);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Total degree: max over terms of the sum of exponents. Zero polynomial
    // reports degree 0.
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
        return d;
    }

    unsigned degree_in(std::size_t var) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    bool is_multilinear() const {
        for (const auto& [e, c] : terms_)
            for (unsigned x : e)
                if (x > 1) return false;
        return true;
    }

    bool operator==(const MultiPoly& o) const {
        return num_vars_ == o.num_vars_ && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly operator-() const {
        MultiPoly r(num_vars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        require_same_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        require_same_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.require_same_arity(b);
        MultiPoly r(a.num_vars_);
        Exponents e(a.num_vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    MultiPoly scaled(const Rational& s) const {
        MultiPoly r(num_vars_);
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    friend MultiPoly operator*(const Rational& s, const MultiPoly& p) { return p.scaled(s); }
    friend MultiPoly operator*(const MultiPoly& p, const Rational& s) { return p.scaled(s); }

    // Exact evaluation. Powers of each coordinate are cached per call.
    Rational eval(const std::vector<Rational>& point) const {
        if (point.size() != num_vars_)
            throw invariant_violation("evaluation point length mismatch");
        std::vector<std::vector<Rational>> powers(num_vars_);
        for (std::size_t i = 0; i < num_vars_; ++i) powers[i].push_back(1);
        Rational sum = 0;
        for (const auto& [e, c] : terms_) {
            Rational term = c;
            for (std::size_t i = 0; i < num_vars_; ++i) {
                if (e[i] == 0) continue;
                auto& pw = powers[i];
                while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
                term *= pw[e[i]];
            }
            sum += term;
        }
        return sum;
    }

    // Caps every exponent at 1; agrees with the original on {0,1} points.
    MultiPoly multilinearized() const {
        MultiPoly r(num_vars_);
        Exponents e(num_vars_);
        for (const auto& [exps, c] : terms_) {
            for (std::size_t i = 0; i < num_vars_; ++i) e[i] = exps[i] > 1 ? 1 : exps[i];
            r.add_term(e, c);
        }
        return r;
    }

    // result(..., v, ...) = this(..., scale*v + offset, ...)
    MultiPoly substitute_affine(std::size_t var, const Rational& scale, const Rational& offset) const {
        if (var >= num_vars_) throw invariant_violation("variable index out of range");
        MultiPoly r(num_vars_);
        Exponents e(num_vars_);
        for (const auto& [exps, c] : terms_) {
            unsigned d = exps[var];
            e = exps;
            // (scale*v + offset)^d expanded binomially
            for (unsigned j = 0; j <= d; ++j) {
                Rational coef = c * Rational(binomial(d, j)) * pow_rational(scale, j) *
                                pow_rational(offset, d - j);
                e[var] = j;
                r.add_term(e, coef);
            }
        }
        return r;
    }

    // Pins one variable to a value; the result has one variable fewer and
    // indices above `var` shift down by one.
    MultiPoly fix_variable(std::size_t var, const Rational& value) const {
        if (var >= num_vars_) throw invariant_violation("variable index out of range");
        MultiPoly r(num_vars_ - 1);
        Exponents e(num_vars_ - 1);
        for (const auto& [exps, c] : terms_) {
            for (std::size_t i = 0, j = 0; i < num_vars_; ++i)
                if (i != var) e[j++] = exps[i];
            r.add_term(e, c * pow_rational(value, exps[var]));
        }
        return r;
    }

    // result(x_0, ..., x_{n-1}) = this(x_{perm[0]}, ..., x_{perm[n-1]})
    MultiPoly permuted(const std::vector<std::size_t>& perm) const {
        if (perm.size() != num_vars_) throw invariant_violation("permutation length mismatch");
        MultiPoly r(num_vars_);
        Exponents e(num_vars_);
        for (const auto& [exps, c] : terms_) {
            for (std::size_t i = 0; i < num_vars_; ++i) e[i] = exps[perm[i]];
            r.add_term(e, c);
        }
        return r;
    }

    MultiPoly swapped(std::size_t i, std::size_t j) const {
        std::vector<std::size_t> perm(num_vars_);
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[i], perm[j]);
        return permuted(perm);
    }

    // Debug/report rendering, e.g. "5/9 + -1/3 x0^2 x1".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << adeg::to_string(c);
            for (std::size_t i = 0; i < num_vars_; ++i) {
                if (e[i] == 0) continue;
                os << " x" << i;
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    void require_same_arity(const MultiPoly& o) const {
        if (num_vars_ != o.num_vars_)
            throw invariant_violation("polynomials have different variable counts");
    }

    std::size_t num_vars_;
    TermMap terms_;
};

// Mean of p over all permutations of the given variable subset. The result
// is invariant under any permutation of `vars` and never has larger degree.
inline MultiPoly symmetrize_average(const MultiPoly& p, std::vector<std::size_t> vars) {
    if (vars.empty()) throw invariant_violation("symmetrize_average: empty variable set");
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
        throw invariant_violation("symmetrize_average: repeated variable");
    if (vars.back() >= p.num_vars())
        throw invariant_violation("symmetrize_average: variable index out of range");
    if (vars.size() > 8)
        throw guard_exceeded("symmetrize_average: more than 8 variables (|V|! blow-up)");

    std::vector<std::size_t> arrangement(vars);
    MultiPoly sum = MultiPoly::zero(p.num_vars());
    unsigned long count = 0;
    std::vector<std::size_t> perm(p.num_vars());
    do {
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t k = 0; k < vars.size(); ++k) perm[vars[k]] = arrangement[k];
        sum += p.permuted(perm);
        ++count;
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    return sum.scaled(Rational(1, count));
}

inline MultiPoly symmetrize_average_all(const MultiPoly& p) {
    std::vector<std::size_t> vars(p.num_vars());
    std::iota(vars.begin(), vars.end(), 0);
    return symmetrize_average(p, vars);
}

} // namespace adeg
