#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "adeg/errors.hpp"
#include "adeg/rational.hpp"

namespace adeg {

// One constraint of the form  coeffs . x >= rhs.
struct LinearConstraint {
    std::vector<Rational> coeffs;
    Rational rhs;
};

struct FarkasEntry {
    std::size_t row;
    Rational multiplier; // strictly positive
};

// Outcome of an exact feasibility solve over { x : A x >= r }.
//
// Exactly one of the two witnesses is populated:
//  - feasible:   `point` satisfies every constraint (re-verified exactly);
//  - infeasible: `certificate` lists nonnegative multipliers y with
//                sum y_i a_i = 0 and sum y_i r_i > 0, so the rows combine to
//                the contradiction 0 >= positive (re-verified exactly).
struct FeasibilityOutcome {
    bool feasible = false;
    std::vector<Rational> point;
    std::vector<FarkasEntry> certificate;
    unsigned long pivots = 0;
};

inline bool satisfies_all(const std::vector<LinearConstraint>& rows,
                          const std::vector<Rational>& x) {
    for (const auto& row : rows) {
        Rational lhs = 0;
        for (std::size_t k = 0; k < row.coeffs.size(); ++k) lhs += row.coeffs[k] * x[k];
        if (lhs < row.rhs) return false;
    }
    return true;
}

// Recombines a Farkas certificate from scratch. Returns the positive gap
// sum y_i r_i; throws if the multipliers are not a valid contradiction.
inline Rational certificate_gap(const std::vector<LinearConstraint>& rows,
                                const std::vector<FarkasEntry>& cert, std::size_t nvars) {
    std::vector<Rational> combo(nvars, 0);
    Rational gap = 0;
    for (const auto& [row, y] : cert) {
        if (row >= rows.size()) throw invariant_violation("certificate row index out of range");
        if (y <= 0) throw invariant_violation("certificate multiplier must be positive");
        for (std::size_t k = 0; k < nvars; ++k) combo[k] += y * rows[row].coeffs[k];
        gap += y * rows[row].rhs;
    }
    for (const auto& c : combo)
        if (c != 0) throw invariant_violation("certificate does not cancel the variables");
    if (gap <= 0) throw invariant_violation("certificate gap is not positive");
    return gap;
}

namespace detail {

// Exact primal simplex on the auxiliary program
//
//   maximize  r^T y   s.t.   A^T y = 0,  1^T y + s = 1,  y, s >= 0,
//
// whose optimum is 0 exactly when { x : A x >= r } is nonempty. The dual
// values of the K equality rows then form a feasible x; a positive optimum
// hands back the maximizing y as an infeasibility certificate.
//
// Primal constraints appear here as columns, so constraint generation is a
// warm start: append the new columns, keep the basis, resume pivoting.
//
// The program is heavily degenerate (every right-hand side except the
// normalization row is zero), so the leaving row is picked by the
// lexicographic ratio test over [rhs | B^-1], which makes every pivot a
// strict lexicographic improvement and guarantees termination. Entering is
// by largest reduced cost, with Bland's smallest-index rule as the stall
// fallback.
//
// Column layout: [0, K) artificials for the equality rows, K the slack of
// the normalization row, then one column per added constraint.
class FeasibilitySimplex {
public:
    explicit FeasibilitySimplex(std::size_t nvars) : K_(nvars), nrows_(nvars + 1) {
        body_.assign(nrows_, {});
        for (std::size_t r = 0; r < nrows_; ++r) {
            body_[r].assign(nrows_, 0);
            body_[r][r] = 1;
        }
        rhs_.assign(nrows_, 0);
        rhs_[K_] = 1;
        rc_pen_.assign(nrows_, 0);
        rc_obj_.assign(nrows_, 0);
        for (std::size_t r = 0; r < K_; ++r) {
            rc_pen_[r] = 0; // artificial columns are basic
            basis_.push_back(r);
        }
        basis_.push_back(K_); // slack
        obj_.assign(nrows_, 0);
        ncols_ = nrows_;
    }

    std::size_t columns_added() const { return ncols_ - nrows_; }

    // Adds one y-column for the primal constraint a . x >= rhs.
    void add_constraint_column(const LinearConstraint& row) {
        if (row.coeffs.size() != K_) throw invariant_violation("constraint width mismatch");
        // Original column in (D): [a | 1] with objective coefficient rhs.
        // Transform into the current basis: B^-1 lives in columns [0, K].
        std::vector<Rational> col(nrows_, 0);
        for (std::size_t i = 0; i < nrows_; ++i) {
            Rational acc = 0;
            for (std::size_t r = 0; r < K_; ++r)
                if (row.coeffs[r] != 0) acc += row.coeffs[r] * body_[i][r];
            acc += body_[i][K_]; // the +1 in the normalization row
            col[i] = acc;
        }
        // Reduced costs against the current basis costs.
        Rational rp = 0, ro = row.rhs;
        for (std::size_t i = 0; i < nrows_; ++i) {
            if (col[i] == 0) continue;
            std::size_t b = basis_[i];
            if (b < K_) rp += col[i]; // artificial cost: penalty -1
            else if (b > K_) ro -= obj_[b] * col[i];
        }
        for (std::size_t i = 0; i < nrows_; ++i) body_[i].push_back(std::move(col[i]));
        obj_.push_back(row.rhs);
        rc_pen_.push_back(std::move(rp));
        rc_obj_.push_back(std::move(ro));
        ++ncols_;
    }

    // Runs to optimality. Returns the auxiliary optimum; fills y (indexed by
    // insertion order of added columns) and the dual point.
    Rational run(unsigned long& pivots) {
        unsigned degenerate_streak = 0;
        const unsigned bland_after = 24;

        for (;;) {
            std::size_t enter = ncols_;
            if (degenerate_streak < bland_after) {
                for (std::size_t j = nrows_; j < ncols_; ++j) {
                    if (!lex_positive(j)) continue;
                    if (enter == ncols_ || lex_greater(j, enter)) enter = j;
                }
            } else {
                for (std::size_t j = nrows_; j < ncols_; ++j) {
                    if (lex_positive(j)) { enter = j; break; }
                }
            }
            if (enter == ncols_) {
                if (expel_basic_artificials(pivots)) continue;
                break;
            }

            std::size_t leave = nrows_;
            for (std::size_t r = 0; r < nrows_; ++r) {
                if (body_[r][enter] <= 0) continue;
                if (leave == nrows_ || lex_ratio_less(r, leave, enter)) leave = r;
            }
            if (leave == nrows_)
                throw internal_error("feasibility simplex: unbounded auxiliary program");

            if (rhs_[leave] == 0) ++degenerate_streak;
            else degenerate_streak = 0;

            pivot(leave, enter);
            ++pivots;
        }

        Rational value = 0;
        for (std::size_t r = 0; r < nrows_; ++r) {
            if (basis_[r] > K_) {
                value += obj_[basis_[r]] * rhs_[r];
            } else if (basis_[r] < K_ && rhs_[r] != 0) {
                throw internal_error("feasibility simplex: artificial variable left positive");
            }
        }
        return value;
    }

    // y multipliers by insertion order, nonzero entries only.
    std::vector<std::pair<std::size_t, Rational>> multipliers() const {
        std::vector<std::pair<std::size_t, Rational>> y;
        for (std::size_t r = 0; r < nrows_; ++r)
            if (basis_[r] > K_ && rhs_[r] != 0) y.emplace_back(basis_[r] - nrows_, rhs_[r]);
        return y;
    }

    // Dual values of the equality rows: the candidate primal point.
    std::vector<Rational> dual_point() const {
        std::vector<Rational> x(K_);
        for (std::size_t r = 0; r < K_; ++r) {
            // artificial r: objective cost 0, reduced cost 0 - pi^T e_r
            x[r] = -rc_obj_[r];
        }
        return x;
    }

private:
    // Pivots artificial variables (all basic at value 0 here) out of every
    // row that has a nonzero entry in some real column. Rows that are zero
    // across all real columns are redundant equalities and keep their
    // artificial harmlessly. Returns true if any pivot happened. Each call
    // permanently retires at least one artificial, so this terminates.
    bool expel_basic_artificials(unsigned long& pivots) {
        bool changed = false;
        for (std::size_t r = 0; r < nrows_; ++r) {
            if (basis_[r] >= K_) continue; // slack or real column
            if (rhs_[r] != 0)
                throw internal_error("feasibility simplex: artificial variable left positive");
            for (std::size_t j = nrows_; j < ncols_; ++j) {
                if (body_[r][j] != 0) {
                    // rhs is 0, so pivoting here (even on a negative entry)
                    // keeps every basic value unchanged.
                    pivot(r, j);
                    ++pivots;
                    changed = true;
                    break;
                }
            }
        }
        return changed;
    }

    bool lex_positive(std::size_t j) const {
        int c = sgn(rc_pen_[j]);
        if (c != 0) return c > 0;
        return rc_obj_[j] > 0;
    }

    bool lex_greater(std::size_t a, std::size_t b) const {
        int c = cmp(rc_pen_[a], rc_pen_[b]);
        if (c != 0) return c > 0;
        return rc_obj_[a] > rc_obj_[b];
    }

    // Compares the lexicographic ratios of rows a and b for the entering
    // column: [rhs_r, B^-1 row r] / pivot_r, component by component with
    // cross-multiplication (both pivot entries are positive).
    bool lex_ratio_less(std::size_t a, std::size_t b, std::size_t enter) const {
        const Rational& pa = body_[a][enter];
        const Rational& pb = body_[b][enter];
        int c = cmp(rhs_[a] * pb, rhs_[b] * pa);
        if (c != 0) return c < 0;
        for (std::size_t j = 0; j < nrows_; ++j) { // B^-1 columns
            c = cmp(body_[a][j] * pb, body_[b][j] * pa);
            if (c != 0) return c < 0;
        }
        throw internal_error("feasibility simplex: lexicographic tie between rows");
    }

    void pivot(std::size_t leave, std::size_t enter) {
        auto& prow = body_[leave];
        Rational inv = 1 / prow[enter];
        for (auto& v : prow)
            if (v != 0) v *= inv;
        prow[enter] = 1;
        rhs_[leave] *= inv;

        for (std::size_t r = 0; r < nrows_; ++r) {
            if (r == leave) continue;
            Rational factor = body_[r][enter];
            if (factor == 0) continue;
            auto& row = body_[r];
            for (std::size_t j = 0; j < ncols_; ++j)
                if (prow[j] != 0) row[j] -= factor * prow[j];
            row[enter] = 0;
            rhs_[r] -= factor * rhs_[leave];
        }
        Rational fp = rc_pen_[enter];
        Rational fo = rc_obj_[enter];
        if (fp != 0 || fo != 0) {
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (prow[j] == 0) continue;
                if (fp != 0) rc_pen_[j] -= fp * prow[j];
                if (fo != 0) rc_obj_[j] -= fo * prow[j];
            }
            rc_pen_[enter] = 0;
            rc_obj_[enter] = 0;
        }
        basis_[leave] = enter;
    }

    static int sgn(const Rational& r) { return mpq_sgn(r.get_mpq_t()); }
    static int cmp(const Rational& a, const Rational& b) {
        return mpq_cmp(a.get_mpq_t(), b.get_mpq_t());
    }

    std::size_t K_, nrows_, ncols_ = 0;
    std::vector<std::vector<Rational>> body_;
    std::vector<Rational> rhs_;
    std::vector<Rational> obj_; // original objective (rhs) per column
    std::vector<Rational> rc_pen_, rc_obj_;
    std::vector<std::size_t> basis_;
};

} // namespace detail

// Decides feasibility of { x in R^nvars : row.coeffs . x >= row.rhs for all
// rows } with exact rational arithmetic. Both witness kinds are re-verified
// before returning.
//
// Constraints enter the solver lazily: a working subset is solved, the
// candidate point is checked against every row exactly, and the worst
// violated rows join as fresh columns of the warm auxiliary program until
// either nothing is violated or infeasibility is certified (a certificate
// over a subset is a certificate for the whole system).
inline FeasibilityOutcome solve_ge_system(const std::vector<LinearConstraint>& rows,
                                          std::size_t nvars) {
    FeasibilityOutcome out;
    if (rows.empty()) {
        out.feasible = true;
        out.point.assign(nvars, 0);
        return out;
    }
    if (nvars == 0) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (rows[j].rhs > 0) {
                out.feasible = false;
                out.certificate.push_back({j, 1});
                return out;
            }
        }
        out.feasible = true;
        return out;
    }

    const std::size_t M = rows.size();
    detail::FeasibilitySimplex simplex(nvars);
    std::vector<std::size_t> added; // column insertion order -> original row
    std::vector<char> is_added(M, 0);
    auto add = [&](std::size_t j) {
        if (is_added[j]) return;
        is_added[j] = 1;
        simplex.add_constraint_column(rows[j]);
        added.push_back(j);
    };

    const std::size_t seed = std::min(M, 2 * nvars + 16);
    for (std::size_t k = 0; k < seed; ++k) add(k * M / seed);

    for (;;) {
        Rational value = simplex.run(out.pivots);
        if (value > 0) {
            out.feasible = false;
            for (const auto& [col, y] : simplex.multipliers())
                out.certificate.push_back({added[col], y});
            certificate_gap(rows, out.certificate, nvars);
            return out;
        }

        std::vector<Rational> x = simplex.dual_point();
        std::vector<std::pair<Rational, std::size_t>> violated;
        for (std::size_t j = 0; j < M; ++j) {
            if (is_added[j]) continue;
            Rational lhs = 0;
            for (std::size_t k = 0; k < nvars; ++k) lhs += rows[j].coeffs[k] * x[k];
            if (lhs < rows[j].rhs) violated.emplace_back(rows[j].rhs - lhs, j);
        }
        if (violated.empty()) {
            if (!satisfies_all(rows, x))
                throw internal_error("solve_ge_system: point fails full re-verification");
            out.feasible = true;
            out.point = std::move(x);
            return out;
        }
        std::sort(violated.begin(), violated.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        const std::size_t take = std::max<std::size_t>(32, nvars);
        for (std::size_t k = 0; k < violated.size() && k < take; ++k) add(violated[k].second);
    }
}

} // namespace adeg
