#include <catch2/catch_amalgamated.hpp>

#include "adeg/bernstein.hpp"
#include "test_util.hpp"

using namespace adeg;
using adeg::testing::Rng;

TEST_CASE("base enclosures on simple polynomials", "[bernstein]") {
    // p = t on [0, 1]: Bernstein coefficients are the endpoint values
    MultiPoly t = MultiPoly::variable(1, 0);
    RatInterval enc = bernstein_base_enclosure(t, Box::cube(1, 0, 1));
    CHECK(enc.lo == 0);
    CHECK(enc.hi == 1);

    // p = t^2 on [-1, 1] at depth 0: encloses [0, 1] with lower endpoint <= 0
    MultiPoly t2 = MultiPoly::monomial(1, {2}, 1);
    enc = bernstein_enclosure(t2, Box::cube(1, -1, 1), 0);
    CHECK(enc.lo <= 0);
    CHECK(enc.contains(rat(0)));
    CHECK(enc.contains(rat(1)));

    // p = t (1 - t) on [0, 1] at depth 4: within [-1/16, 1/4 + 1/16]
    MultiPoly hump(1);
    hump.add_term({1}, 1);
    hump.add_term({2}, -1);
    enc = bernstein_enclosure(hump, Box::cube(1, 0, 1), 4);
    CHECK(enc.lo >= rat(-1, 16));
    CHECK(enc.hi <= rat(1, 4) + rat(1, 16));
    CHECK(enc.contains(rat(0)));       // true range is [0, 1/4]
    CHECK(enc.contains(rat(1, 4)));
}

TEST_CASE("enclosures are sound and shrink with depth", "[bernstein][property]") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = 1 + static_cast<std::size_t>(trial % 3);
        MultiPoly p = adeg::testing::random_poly(rng, m, 5, 8);
        std::vector<std::pair<Rational, Rational>> ranges(m);
        for (auto& [lo, hi] : ranges) {
            lo = adeg::testing::random_rational(rng, 4, 4);
            hi = lo + 1 + adeg::testing::random_rational(rng, 2, 2) / 2 + 2;
        }
        Box box{ranges};

        // random interior point via convex combination
        std::vector<Rational> pt(m);
        for (std::size_t i = 0; i < m; ++i) {
            Rational w = rat(std::uniform_int_distribution<long>(0, 16)(rng), 16);
            pt[i] = box.ranges[i].first * (1 - w) + box.ranges[i].second * w;
        }
        Rational value = p.eval(pt);

        RatInterval prev = bernstein_enclosure(p, box, 0);
        CHECK(prev.contains(value));
        for (unsigned depth = 1; depth <= 3; ++depth) {
            RatInterval enc = bernstein_enclosure(p, box, depth);
            CHECK(enc.contains(value));
            CHECK(enc.width() <= prev.width());
            CHECK(enc.lo >= prev.lo);
            CHECK(enc.hi <= prev.hi);
            prev = enc;
        }
    }
}

TEST_CASE("certify_range outcomes", "[bernstein]") {
    MultiPoly hump(1); // t (1 - t), range [0, 1/4] on [0, 1]
    hump.add_term({1}, 1);
    hump.add_term({2}, -1);

    // Slack bounds certify at shallow depth
    CertifyResult ok = certify_range(hump, Box::cube(1, 0, 1), rat(-1, 100),
                                     rat(1, 4) + rat(1, 100), 8);
    CHECK(ok.certified());

    // On [0, 1] bisection lands exactly on the maximizer t = 1/2, where the
    // Bernstein bound is exact, so even the touching bound certifies.
    CertifyResult touch = certify_range(hump, Box::cube(1, 0, 1), rat(-1, 100), rat(1, 4), 6);
    CHECK(touch.certified());

    // On [0, 3/4] no dyadic split point ever hits t = 1/2, the enclosure of
    // any box with the maximizer strictly inside stays above 1/4, and the
    // touching bound remains undecided at every depth.
    CertifyResult stuck =
        certify_range(hump, Box::cube(1, 0, rat(3, 4)), rat(-1, 100), rat(1, 4), 7);
    CHECK(stuck.status == CertifyResult::Status::Inconclusive);
    CHECK(stuck.undecided_box.ranges[0].first < rat(1, 2));
    CHECK(stuck.undecided_box.ranges[0].second > rat(1, 2));

    // Genuine violation: returns a definitive counterexample point
    MultiPoly t = MultiPoly::variable(1, 0);
    CertifyResult bad = certify_range(t, Box::cube(1, 0, 1), 0, rat(1, 3), 10);
    REQUIRE(bad.status == CertifyResult::Status::Counterexample);
    CHECK(bad.counterexample_value > rat(1, 3));
    CHECK(bad.counterexample_value == t.eval(bad.counterexample));

    // Linear polynomials have exact enclosures: touching bounds still certify
    CertifyResult exact = certify_range(t, Box::cube(1, 0, 1), 0, 1, 0);
    CHECK(exact.certified());
}
