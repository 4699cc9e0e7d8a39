#include <catch2/catch_amalgamated.hpp>

#include "adeg/simplex.hpp"

using namespace adeg;

namespace {

LinearConstraint ge(std::vector<Rational> coeffs, Rational rhs) {
    return LinearConstraint{std::move(coeffs), std::move(rhs)};
}

} // namespace

TEST_CASE("feasible systems return verified points", "[simplex]") {
    // x >= 1, -x >= -3  (i.e. 1 <= x <= 3)
    std::vector<LinearConstraint> rows = {ge({1}, 1), ge({-1}, -3)};
    auto out = solve_ge_system(rows, 1);
    REQUIRE(out.feasible);
    CHECK(satisfies_all(rows, out.point));

    // x + y >= 1, x - y >= 0, -x >= -2
    rows = {ge({1, 1}, 1), ge({1, -1}, 0), ge({-1, 0}, -2)};
    out = solve_ge_system(rows, 2);
    REQUIRE(out.feasible);
    CHECK(satisfies_all(rows, out.point));
}

TEST_CASE("infeasible systems return verified Farkas certificates", "[simplex]") {
    // x >= 1 and -x >= 0 cannot both hold
    std::vector<LinearConstraint> rows = {ge({1}, 1), ge({-1}, 0)};
    auto out = solve_ge_system(rows, 1);
    REQUIRE_FALSE(out.feasible);
    CHECK(certificate_gap(rows, out.certificate, 1) > 0);

    // x + y >= 2, -x >= -1, -y >= -1 forces x = y = 1; tighten to conflict
    rows = {ge({1, 1}, 3), ge({-1, 0}, -1), ge({0, -1}, -1)};
    out = solve_ge_system(rows, 2);
    REQUIRE_FALSE(out.feasible);
    CHECK(certificate_gap(rows, out.certificate, 2) > 0);
}

TEST_CASE("redundant equalities and dependent columns are handled", "[simplex]") {
    // Overdetermined but consistent: many copies of the same constraint.
    std::vector<LinearConstraint> rows;
    for (int i = 0; i < 6; ++i) rows.push_back(ge({1, 2}, 2));
    rows.push_back(ge({-1, -2}, -2)); // forces x + 2y == 2 exactly
    auto out = solve_ge_system(rows, 2);
    REQUIRE(out.feasible);
    CHECK(satisfies_all(rows, out.point));

    // More variables than independent constraints (rank-deficient A^T).
    rows = {ge({1, 0, 0, 0, 0}, 1)};
    out = solve_ge_system(rows, 5);
    REQUIRE(out.feasible);
    CHECK(satisfies_all(rows, out.point));
}

TEST_CASE("degenerate edge cases", "[simplex]") {
    auto out = solve_ge_system({}, 3);
    REQUIRE(out.feasible);

    // No variables: feasible iff every rhs <= 0.
    std::vector<LinearConstraint> rows = {ge({}, 0), ge({}, -1)};
    out = solve_ge_system(rows, 0);
    REQUIRE(out.feasible);
    rows.push_back(ge({}, 1));
    out = solve_ge_system(rows, 0);
    REQUIRE_FALSE(out.feasible);
    CHECK(certificate_gap(rows, out.certificate, 0) > 0);

    // Equality pinning: x = 5/7 via two rows.
    rows = {ge({1}, rat(5, 7)), ge({-1}, rat(-5, 7))};
    out = solve_ge_system(rows, 1);
    REQUIRE(out.feasible);
    CHECK(out.point[0] == rat(5, 7));
}
