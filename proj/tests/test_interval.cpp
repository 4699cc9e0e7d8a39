#include <catch2/catch_amalgamated.hpp>

#include "adeg/interval.hpp"

using namespace adeg;

TEST_CASE("natural log brackets", "[interval]") {
    // ln 2 = 0.69314718055994530941...
    RatInterval l2 = ln_interval(rat(2), 48);
    CHECK(l2.lo <= rat(693147180559945310, 1000000000000000000));
    CHECK(l2.hi >= rat(693147180559945309, 1000000000000000000));
    CHECK(l2.lo >= rat(69314, 100000));
    CHECK(l2.hi <= rat(69315, 100000));

    // ln 10 = 2.302585092994045684...
    RatInterval l10 = ln_interval(rat(10), 48);
    CHECK(l10.contains(rat(2302585092994045684, 1000000000000000000)));
    CHECK(l10.width() < rat(1, 1000000));

    // ln 16 = 2.772588722239781237...
    RatInterval l16 = ln_interval(rat(16), 48);
    CHECK(l16.contains(rat(2772588722239781237, 1000000000000000000)));

    CHECK(ln_interval(rat(1), 8).lo == 0);
    CHECK(ln_interval(rat(1), 8).hi == 0);

    // reciprocal symmetry: ln(1/x) = -ln(x)
    RatInterval lhalf = ln_interval(rat(1, 2), 48);
    CHECK(lhalf.lo == -l2.hi);
    CHECK(lhalf.hi == -l2.lo);

    CHECK_THROWS_AS(ln_interval(rat(0)), invariant_violation);

    // brackets tighten with more terms
    CHECK(ln_interval(rat(10), 64).width() < ln_interval(rat(10), 16).width());
}

TEST_CASE("sqrt brackets", "[interval]") {
    RatInterval s2 = sqrt_interval(rat(2));
    CHECK(s2.lo * s2.lo <= 2);
    CHECK(s2.hi * s2.hi >= 2);
    // overlaps a frozen 17-digit bracket of sqrt(2)
    CHECK(s2.lo <= rat(141421356237309505, 100000000000000000));
    CHECK(s2.hi >= rat(141421356237309504, 100000000000000000));
    CHECK(s2.width() < rat(1, 1000000000));

    // exact on perfect squares
    RatInterval s94 = sqrt_interval(rat(9, 4));
    CHECK(s94.lo == rat(3, 2));
    CHECK(s94.hi == rat(3, 2));

    CHECK(sqrt_interval(rat(0)).hi == 0);
    CHECK_THROWS_AS(sqrt_interval(rat(-1)), invariant_violation);
}

TEST_CASE("interval arithmetic", "[interval]") {
    RatInterval a(rat(-1), rat(2));
    RatInterval b(rat(3), rat(4));
    RatInterval sum = a + b;
    CHECK(sum.lo == 2);
    CHECK(sum.hi == 6);
    RatInterval prod = a * b;
    CHECK(prod.lo == -4);
    CHECK(prod.hi == 8);
    RatInterval quot = a / b;
    CHECK(quot.lo == rat(-1, 3));
    CHECK(quot.hi == rat(2, 3));
    CHECK_THROWS_AS(a / RatInterval(rat(-1), rat(1)), invariant_violation);

    // powers: monotone, sign-flipped, and straddling cases
    CHECK(RatInterval(rat(2), rat(3)).pow(2).lo == 4);
    CHECK(RatInterval(rat(-3), rat(-2)).pow(2).lo == 4);
    CHECK(RatInterval(rat(-3), rat(-2)).pow(3).hi == -8);
    RatInterval straddle = RatInterval(rat(-2), rat(3)).pow(2);
    CHECK(straddle.lo == 0);
    CHECK(straddle.hi == 9);

    CHECK(interval_le(RatInterval(rat(1), rat(2)), RatInterval(rat(2), rat(3))) ==
          Decision::True);
    CHECK(interval_le(RatInterval(rat(3), rat(4)), RatInterval(rat(1), rat(2))) ==
          Decision::False);
    CHECK(interval_le(RatInterval(rat(1), rat(3)), RatInterval(rat(2), rat(4))) ==
          Decision::Unknown);
}
