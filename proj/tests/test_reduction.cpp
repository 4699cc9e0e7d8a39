#include <catch2/catch_amalgamated.hpp>

#include <bit>

#include "adeg/reduction.hpp"
#include "test_util.hpp"

using namespace adeg;
using adeg::testing::Rng;

namespace {

RobustRegionSpec spec_n4() {
    return RobustRegionSpec(2, rat(4), rat(1, 3), rat(2, 3), rat(1, 3), rat(2, 3));
}

RobustRegionSpec spec_n6() {
    return RobustRegionSpec(2, rat(6), rat(1, 3), rat(2, 3), rat(1, 3), rat(2, 3));
}

} // namespace

TEST_CASE("shift parameters", "[reduction]") {
    ShiftParams s = ShiftParams::from_region(spec_n6());
    CHECK(s.scale == 2);
    CHECK(s.k == rat(128, 9));
    CHECK(s.k_floor == 14);

    ShiftParams s4 = ShiftParams::from_region(spec_n4());
    CHECK(s4.k == rat(25, 3));
    CHECK(s4.k_floor == 8);

    // forward map endpoints: t = 2 -> 0 and t = b/a + a/b -> 1
    Rational a = rat(1, 3), b = rat(2, 3);
    CHECK((Rational(2) - 2) * s.scale == 0);
    CHECK((b / a + a / b - 2) * s.scale == 1);
}

TEST_CASE("shift closed form equals the factored expression", "[reduction][property]") {
    Rng rng(55);
    int built = 0;
    while (built < 40) {
        Rational a = rat(1 + std::uniform_int_distribution<long>(0, 8)(rng), 12);
        Rational b = a + rat(1 + std::uniform_int_distribution<long>(0, 6)(rng), 12);
        Rational n = b + rat(1 + std::uniform_int_distribution<long>(0, 40)(rng), 4);
        if (!(b / a < n / b)) continue;
        ++built;
        Rational scale = a * b / ((b - a) * (b - a));
        Rational k1 = (n / b + b / n - 2) * scale;
        Rational k2 = a * (n - b) * (n - b) / (n * (b - a) * (b - a));
        CHECK(k1 == k2);
        CHECK(k2 >= 1);
    }
}

TEST_CASE("unsymmetrize replaces variables by Boolean sums", "[reduction]") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        MultiPoly qbar = adeg::testing::random_poly(rng, 2, 3, 6);
        const unsigned copies = 3;
        MultiPoly final_poly = unsymmetrize(qbar, copies);
        REQUIRE(final_poly.num_vars() == 6);
        CHECK(final_poly.total_degree() <= qbar.total_degree());
        CHECK(final_poly.is_multilinear());
        for (std::uint32_t mask = 0; mask < 64; ++mask) {
            std::vector<Rational> bits(6);
            long w1 = 0, w2 = 0;
            for (std::size_t i = 0; i < 6; ++i) {
                bits[i] = (mask >> i) & 1u;
                (i < copies ? w1 : w2) += (mask >> i) & 1u;
            }
            CHECK(final_poly.eval(bits) == qbar.eval({Rational(w1), Rational(w2)}));
        }
    }
}

TEST_CASE("verify_nor_approx", "[reduction]") {
    // arity 0: the empty NOR is the constant 1, so the value must be >= beta
    NorCheck empty = verify_nor_approx(MultiPoly::constant(0, rat(3, 4)), rat(1, 3), rat(2, 3));
    CHECK(empty.pass);
    CHECK_FALSE(
        verify_nor_approx(MultiPoly::constant(0, rat(1, 2)), rat(1, 3), rat(2, 3)).pass);

    // deliberate failure: beta (1 - sum z_i) goes negative at weight 2
    MultiPoly proxy = MultiPoly::constant(3, rat(2, 3));
    for (std::size_t i = 0; i < 3; ++i)
        proxy -= MultiPoly::variable(3, i).scaled(rat(2, 3));
    NorCheck bad = verify_nor_approx(proxy, rat(1, 3), rat(2, 3));
    REQUIRE_FALSE(bad.pass);
    CHECK(std::popcount(bad.failing_point) >= 2);
    CHECK(bad.failing_value < 0);

    // an honest NOR_2 approximator: 2/3 - (z1 + z2)/3 + small correction
    MultiPoly good = MultiPoly::constant(2, rat(2, 3));
    good -= MultiPoly::variable(2, 0).scaled(rat(1, 3));
    good -= MultiPoly::variable(2, 1).scaled(rat(1, 3));
    good.add_term({1, 1}, rat(1, 3));
    CHECK(verify_nor_approx(good, rat(1, 3), rat(2, 3)).pass);
}

TEST_CASE("identity-chain smoke test on a constant polynomial", "[reduction]") {
    RobustRegionSpec spec = spec_n6();
    MultiPoly p = MultiPoly::constant(2, spec.beta);
    ReductionOptions opts;
    opts.check_intermediate = false; // a constant violates the case-1 bands
    ReductionResult r = reduce_to_nor(p, spec, opts);
    CHECK(r.m_even == 2);
    CHECK(r.final_arity == 14);
    CHECK(r.shift.k_floor == 14);
    CHECK(r.final_poly == MultiPoly::constant(14, spec.beta));
    // constant beta sits above alpha at every nonzero point
    CHECK_FALSE(verify_nor_approx(r.final_poly, spec.alpha, spec.beta).pass);
}

TEST_CASE("odd arity is handled by fixing the last variable at b", "[reduction]") {
    RobustRegionSpec spec(3, rat(6), rat(1, 3), rat(2, 3), rat(1, 3), rat(2, 3));
    MultiPoly p = MultiPoly::constant(3, spec.beta);
    ReductionOptions opts;
    opts.check_intermediate = false;
    ReductionResult r = reduce_to_nor(p, spec, opts);
    CHECK(r.m_even == 2);
    CHECK(r.final_arity == 14);
}

TEST_CASE("robust LP construction and full reduction at n=4", "[reduction][integration]") {
    RobustRegionSpec spec = spec_n4();
    const unsigned res = 3;

    RobustConstruction grid_only = construct_robust_poly(spec, res, false, 12);
    REQUIRE(grid_only.found);

    RobustConstruction full = construct_robust_poly(spec, res, true, 12);
    REQUIRE(full.found);
    CHECK(full.degree >= grid_only.degree);
    INFO("grid-only degree " << grid_only.degree << ", chain-constrained degree " << full.degree);

    // every infeasible attempt carries an exactly recombining certificate
    for (const auto& attempt : full.attempts)
        if (!attempt.feasible) CHECK(attempt.recombined_gap() > 0);

    const MultiPoly& p = full.poly;
    CHECK(p.total_degree() <= full.degree);

    RegionReport region = verify_region_conditions(p, spec, CheckMode::Grid, res);
    CHECK(region.pass);
    RegionReport weaker = weaker_conditions_check(p, spec, CheckMode::Grid, res);
    CHECK(weaker.pass); // region inclusion: strong pass implies weaker pass

    ReductionOptions opts;
    opts.grid_resolution = res;
    ReductionResult r = reduce_to_nor(p, spec, opts);
    CHECK(r.shift.k == rat(25, 3));
    CHECK(r.final_arity == 8);
    CHECK(r.final_poly.total_degree() <= p.total_degree());
    for (const auto& rep : r.reports) CHECK(rep.pass);

    NorCheck nor = verify_nor_approx(r.final_poly, spec.alpha, spec.beta);
    CHECK(nor.pass);

    // stagewise identities: Laurent stage at random nonzero s, shift stage by
    // the forward substitution, final stage against qbar at integer sums
    const MultiPoly& p_sym = r.stages[1].poly; // symmetrized
    const MultiPoly& q = r.stages[2].poly;     // laurent
    const MultiPoly& qbar = r.stages[3].poly;  // shifted
    Rng rng(5150);
    for (int k = 0; k < 50; ++k) {
        Rational s = adeg::testing::random_nonzero_rational(rng);
        CHECK(q.eval({s + 1 / s}) == p_sym.eval({spec.b * s, spec.b / s}));
    }
    for (int k = 0; k < 25; ++k) {
        Rational t = adeg::testing::random_rational(rng);
        CHECK(qbar.eval({(t - 2) * r.shift.scale}) == q.eval({t}));
    }
    for (long w = 0; w <= r.shift.k_floor; ++w) {
        std::vector<Rational> bits(r.final_arity, Rational(0));
        for (long i = 0; i < w; ++i) bits[static_cast<std::size_t>(i)] = 1;
        CHECK(r.final_poly.eval(bits) == qbar.eval({Rational(w)}));
    }

    // trace text is deterministic and carries one block per stage
    std::string trace = r.trace_text();
    CHECK(trace.find("stage symmetrized") != std::string::npos);
    CHECK(trace.find("stage final") != std::string::npos);
    CHECK(trace == reduce_to_nor(p, spec, opts).trace_text());
}

TEST_CASE("intermediate check failure carries a witness", "[reduction]") {
    RobustRegionSpec spec = spec_n4();
    MultiPoly p = MultiPoly::constant(2, spec.beta); // violates the q high band
    CHECK_THROWS_AS(reduce_to_nor(p, spec), intermediate_check_failure);
    try {
        reduce_to_nor(p, spec);
    } catch (const intermediate_check_failure& e) {
        CHECK(std::string(e.what()).find("violation at") != std::string::npos);
    }
}

TEST_CASE("robust LP rejects odd m in chain mode and low degrees", "[reduction]") {
    RobustRegionSpec odd(3, rat(6), rat(1, 3), rat(2, 3), rat(1, 3), rat(2, 3));
    CHECK_THROWS_AS(robust_poly_lp(odd, 2, 3, true), invariant_violation);

    // degree 0: a constant cannot satisfy both bands
    RobustLpResult r0 = robust_poly_lp(spec_n4(), 0, 3, false);
    CHECK_FALSE(r0.feasible);
    CHECK(r0.recombined_gap() > 0);
}
