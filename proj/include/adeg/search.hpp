#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "adeg/bernstein.hpp"
#include "adeg/errors.hpp"
#include "adeg/multipoly.hpp"
#include "adeg/reduction.hpp"
#include "adeg/region.hpp"
#include "adeg/simplex.hpp"

namespace adeg {

// Feasibility search for robust polynomials on the unit box: p of degree <= d
// in m variables with, for all x in [0,1]^m,
//   1. some x_i <= 1/3  =>  p in [0, 1/3]
//   2. all  x_i >= 2/3  =>  p in [2/3, 1]
// The LP constrains every lattice point of the 1/res grid. Grid
// infeasibility certifies continuous infeasibility at degree d (the grid
// constraints are a subset of the continuous ones); a grid-feasible
// candidate is then attempted against the continuous regions with Bernstein
// subdivision.
struct SearchResult {
    enum class Status { Infeasible, Certified, UncertifiedCandidate };
    Status status = Status::Infeasible;
    unsigned degree = 0;
    MultiPoly candidate;
    std::vector<FarkasEntry> certificate;
    std::vector<LinearConstraint> rows;
    std::vector<std::string> row_desc;
    std::size_t basis_size = 0;
    std::vector<CertifyResult> region_certs; // per region box, when grid-feasible

    Rational recombined_gap() const { return certificate_gap(rows, certificate, basis_size); }

    std::string status_name() const {
        switch (status) {
            case Status::Infeasible: return "infeasible-at-degree";
            case Status::Certified: return "certified";
            case Status::UncertifiedCandidate: return "uncertified-candidate";
        }
        return "?";
    }

    std::string text() const {
        std::ostringstream os;
        os << "report feasibility_search\n";
        os << "degree = " << degree << "\n";
        os << "status = " << status_name() << "\n";
        os << "basis = " << basis_size << "\n";
        if (status == Status::Infeasible)
            os << "certificate_rows = " << certificate.size() << "\n";
        return os.str();
    }
};

inline SearchResult robust_feasibility_search(std::size_t m, unsigned d, unsigned grid_res,
                                              unsigned bernstein_depth = 10,
                                              std::size_t basis_guard = 50000) {
    if (m == 0) throw invariant_violation("feasibility search needs m >= 1");
    const Rational a = rat(1, 3), b = rat(2, 3);
    const Rational alpha = rat(1, 3), beta = rat(2, 3);

    SearchResult out;
    out.degree = d;
    std::vector<MultiPoly::Exponents> basis = detail::degree_basis(m, d, basis_guard);
    out.basis_size = basis.size();

    std::vector<Rational> axis = grid_axis(0, 1, grid_res);
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
        std::vector<Rational> pt(m);
        for (std::size_t i = 0; i < m; ++i) pt[i] = axis[idx[i]];
        bool case1 = false, case2 = true;
        for (const auto& x : pt) {
            if (x <= a) case1 = true;
            if (x < b) case2 = false;
        }
        if (case1 || case2) {
            std::vector<Rational> row(basis.size());
            for (std::size_t k = 0; k < basis.size(); ++k)
                row[k] = MultiPoly::monomial(m, basis[k], 1).eval(pt);
            std::vector<Rational> neg(row.size());
            for (std::size_t k = 0; k < row.size(); ++k) neg[k] = -row[k];
            const std::string at = "p" + detail::point_string(pt);
            if (case1) {
                out.rows.push_back({row, Rational(0)});
                out.row_desc.push_back(at + " >= 0");
                out.rows.push_back({std::move(neg), -alpha});
                out.row_desc.push_back(at + " <= 1/3");
            } else {
                out.rows.push_back({row, beta});
                out.row_desc.push_back(at + " >= 2/3");
                out.rows.push_back({std::move(neg), Rational(-1)});
                out.row_desc.push_back(at + " <= 1");
            }
        }
        std::size_t i = 0;
        while (i < m && ++idx[i] == axis.size()) idx[i++] = 0;
        if (i == m) break;
    }

    FeasibilityOutcome sol = solve_ge_system(out.rows, basis.size());
    if (!sol.feasible) {
        out.status = SearchResult::Status::Infeasible;
        out.certificate = std::move(sol.certificate);
        out.recombined_gap(); // exact re-check
        return out;
    }

    MultiPoly p(m);
    for (std::size_t k = 0; k < basis.size(); ++k) p.add_term(basis[k], sol.point[k]);
    out.candidate = std::move(p);

    // Attempt continuous certification over the two region families.
    bool all_certified = true;
    for (std::size_t i = 0; i < m; ++i) {
        Box box = Box::cube(m, 0, 1);
        box.ranges[i] = {Rational(0), a};
        CertifyResult r = certify_range(out.candidate, box, 0, alpha, bernstein_depth);
        if (!r.certified()) all_certified = false;
        out.region_certs.push_back(std::move(r));
    }
    {
        Box box = Box::cube(m, b, 1);
        CertifyResult r = certify_range(out.candidate, box, beta, 1, bernstein_depth);
        if (!r.certified()) all_certified = false;
        out.region_certs.push_back(std::move(r));
    }
    out.status = all_certified ? SearchResult::Status::Certified
                               : SearchResult::Status::UncertifiedCandidate;
    return out;
}

// Sweep over degrees. Every entry carries its own verified witness kind.
inline std::vector<SearchResult> robust_feasibility_sweep(std::size_t m, unsigned d_min,
                                                          unsigned d_max, unsigned grid_res,
                                                          unsigned bernstein_depth = 10,
                                                          std::size_t basis_guard = 50000) {
    std::vector<SearchResult> results;
    for (unsigned d = d_min; d <= d_max; ++d)
        results.push_back(robust_feasibility_search(m, d, grid_res, bernstein_depth, basis_guard));
    return results;
}

} // namespace adeg
