#include <catch2/catch_amalgamated.hpp>

#include "adeg/multipoly.hpp"
#include "adeg/poly_io.hpp"
#include "test_util.hpp"

using namespace adeg;
using adeg::testing::Rng;

namespace {

MultiPoly or2_poly() {
    // x0 + x1 - x0 x1
    MultiPoly p(2);
    p.add_term({1, 0}, 1);
    p.add_term({0, 1}, 1);
    p.add_term({1, 1}, -1);
    return p;
}

} // namespace

TEST_CASE("eval matches hand values", "[poly]") {
    MultiPoly p = or2_poly();
    CHECK(p.eval({rat(1), rat(1)}) == 1);
    CHECK(p.eval({rat(0), rat(0)}) == 0);

    MultiPoly sq = MultiPoly::monomial(1, {2}, 1);
    CHECK(sq.eval({rat(2, 3)}) == rat(4, 9));

    CHECK_THROWS_AS(p.eval({rat(1)}), invariant_violation);
}

TEST_CASE("multilinearize basics", "[poly]") {
    MultiPoly cube = MultiPoly::monomial(1, {3}, 1);
    CHECK(cube.multilinearized() == MultiPoly::variable(1, 0));

    MultiPoly p(2);
    p.add_term({2, 1}, 1); // x0^2 x1
    p.add_term({0, 2}, 1); // x1^2
    MultiPoly expect(2);
    expect.add_term({1, 1}, 1);
    expect.add_term({0, 1}, 1);
    CHECK(p.multilinearized() == expect);

    MultiPoly c = MultiPoly::constant(3, 5);
    CHECK(c.multilinearized() == c);
}

TEST_CASE("multilinearize agrees on the Boolean cube", "[poly][property]") {
    Rng rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
        MultiPoly p = adeg::testing::random_poly(rng, n, 6, 12);
        MultiPoly ml = p.multilinearized();
        CHECK(ml.is_multilinear());
        CHECK(ml.total_degree() <= p.total_degree());
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<Rational> pt(n);
            for (std::size_t i = 0; i < n; ++i) pt[i] = (mask >> i) & 1u;
            CHECK(p.eval(pt) == ml.eval(pt));
        }
    }
}

TEST_CASE("symmetrize_average examples", "[poly]") {
    MultiPoly x0 = MultiPoly::variable(2, 0);
    MultiPoly avg = symmetrize_average(x0, {0, 1});
    MultiPoly expect(2);
    expect.add_term({1, 0}, rat(1, 2));
    expect.add_term({0, 1}, rat(1, 2));
    CHECK(avg == expect);

    MultiPoly x01 = MultiPoly::monomial(2, {1, 1}, 1);
    CHECK(symmetrize_average(x01, {0, 1}) == x01);

    // x0^2 x1 -> (x0^2 x1 + x0 x1^2)/2, by enumerating both permutations
    MultiPoly p = MultiPoly::monomial(2, {2, 1}, 1);
    MultiPoly expect2(2);
    expect2.add_term({2, 1}, rat(1, 2));
    expect2.add_term({1, 2}, rat(1, 2));
    CHECK(symmetrize_average(p, {0, 1}) == expect2);

    CHECK_THROWS_AS(symmetrize_average(p, {}), invariant_violation);
}

TEST_CASE("symmetrize_average properties", "[poly][property]") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        MultiPoly p = adeg::testing::random_poly(rng, n, 5, 10);
        std::vector<std::size_t> vars(n);
        std::iota(vars.begin(), vars.end(), 0);
        MultiPoly s = symmetrize_average(p, vars);
        CHECK(s.total_degree() <= p.total_degree());
        CHECK(symmetrize_average(s, vars) == s); // idempotent
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(s.swapped(i, i + 1) == s);
    }
}

TEST_CASE("substitute_affine examples and inverse", "[poly]") {
    MultiPoly t = MultiPoly::variable(1, 0);
    MultiPoly shifted = t.substitute_affine(0, 1, -2);
    MultiPoly expect(1);
    expect.add_term({1}, 1);
    expect.add_term({0}, -2);
    CHECK(shifted == expect);

    MultiPoly t2 = MultiPoly::monomial(1, {2}, 1);
    CHECK(t2.substitute_affine(0, 2, 0) == MultiPoly::monomial(1, {2}, 4));

    // t -> (t - 2) * ab/(b-a)^2 with a=1/3, b=2/3 has scale factor 2
    Rational a = rat(1, 3), b = rat(2, 3);
    Rational scale = a * b / ((b - a) * (b - a));
    CHECK(scale == 2);

    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        MultiPoly p = adeg::testing::random_poly(rng, 3, 6, 8);
        Rational s = adeg::testing::random_nonzero_rational(rng);
        Rational o = adeg::testing::random_rational(rng);
        MultiPoly q = p.substitute_affine(1, s, o).substitute_affine(1, 1 / s, -o / s);
        CHECK(q == p);
    }
}

TEST_CASE("fix_variable", "[poly]") {
    MultiPoly p = MultiPoly::monomial(2, {1, 1}, 1);
    CHECK(p.fix_variable(1, 1) == MultiPoly::variable(1, 0));

    MultiPoly sum(2);
    sum.add_term({1, 0}, 1);
    sum.add_term({0, 1}, 1);
    MultiPoly fixed = sum.fix_variable(1, rat(2, 3));
    MultiPoly expect(1);
    expect.add_term({1}, 1);
    expect.add_term({0}, rat(2, 3));
    CHECK(fixed == expect);

    MultiPoly diff(2); // (x0 - x1)^2
    diff.add_term({2, 0}, 1);
    diff.add_term({1, 1}, -2);
    diff.add_term({0, 2}, 1);
    CHECK(diff.fix_variable(1, 0) == MultiPoly::monomial(1, {2}, 1));
}

TEST_CASE("polynomial text format round-trips exactly", "[poly][io]") {
    Rng rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = static_cast<std::size_t>(trial % 5);
        MultiPoly p = adeg::testing::random_poly(rng, n, 7, 9);
        std::string text = poly_to_text(p);
        MultiPoly back = poly_from_text(text);
        CHECK(back == p);
        CHECK(poly_to_text(back) == text); // canonical bytes
    }
    CHECK_THROWS_AS(poly_from_text("nope"), parse_error);
    CHECK_THROWS_AS(poly_from_text("vars 2\n1 : 0 0\n"), parse_error);
    CHECK_THROWS_AS(poly_from_text("vars 1\n1/2 : 0\n1/3 : 0\n"), parse_error);
}

TEST_CASE("rational helpers", "[poly]") {
    CHECK(parse_rational("2/4") == rat(1, 2));
    CHECK(parse_rational("-7") == rat(-7));
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("x"), parse_error);
    CHECK(floor_rational(rat(128, 9)) == 14);
    CHECK(floor_rational(rat(-7, 2)) == -4);
    CHECK(pow_rational(rat(-2, 3), 3) == rat(-8, 27));
    CHECK(to_fraction_string(rat(5)) == "5/1");
}
