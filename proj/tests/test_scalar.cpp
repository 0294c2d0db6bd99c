#include "hmlab/scalar.hpp"

#include <random>

#include "doctest.h"
#include "hmlab/errors.hpp"
#include "oracle.hpp"

using hmlab::Quadratic;
using hmlab::RealScalar;

TEST_CASE("scalar literals parse and reject") {
    CHECK(hmlab::parse_rational("7/3") == mpq_class(7, 3));
    CHECK(hmlab::parse_rational("-4") == -4);
    CHECK(hmlab::parse_rational("22/8") == mpq_class(11, 4));
    CHECK_THROWS_AS(hmlab::parse_rational("1/0"), hmlab::ValueError);
    CHECK(hmlab::parse_scalar("rat:7/3").field_value().rat() == mpq_class(7, 3));
    Quadratic q = hmlab::parse_field("quad:1,-1/2,2");
    CHECK(q.a() == 1);
    CHECK(q.b() == mpq_class(-1, 2));
    CHECK(q.d() == 2);
    CHECK(hmlab::parse_field("dec:0.25").rat() == mpq_class(1, 4));
    CHECK(hmlab::parse_field("dec:-3.5").rat() == mpq_class(-7, 2));
    CHECK(hmlab::parse_scalar("rat:1/3").exact());

    CHECK_THROWS_AS(hmlab::parse_scalar("1/3"), hmlab::ValueError);
    CHECK_THROWS_AS(hmlab::parse_scalar("quad:1,2"), hmlab::ValueError);
    CHECK_THROWS_AS(hmlab::parse_scalar("rat:1/0"), hmlab::ValueError);
    CHECK_THROWS_AS(hmlab::parse_scalar("dec:abc"), hmlab::ValueError);
    CHECK_THROWS_AS(hmlab::parse_scalar(""), hmlab::ValueError);
}

TEST_CASE("refine yields nested enclosures of the requested width") {
    RealScalar x(Quadratic(mpq_class(0), mpq_class(1), 2));
    hmlab::Enclosure a = x.refine(20);
    hmlab::Enclosure b = x.refine(100);
    CHECK(a.width_within(20));
    CHECK(b.width_within(100));
    CHECK(a.contains(b));
    // Dyadic values get a zero-width interval.
    RealScalar d(mpq_class(3, 8));
    CHECK(d.refine(10).width().is_zero());
}

TEST_CASE("floor_linear agrees with the reference on random field data") {
    std::mt19937 rng(20260822);
    std::uniform_int_distribution<long> num(-100, 100);
    std::uniform_int_distribution<long> den(1, 25);
    std::uniform_int_distribution<long> mval(0, 10000);
    const long ds[] = {2, 3, 5, 6, 7, 10, 11, 14, 19, 23};
    auto rnd_q = [&]() {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    for (int i = 0; i < 10000; ++i) {
        mpq_class ta = rnd_q(), tb = rnd_q();
        if (tb == 0) tb = 1;
        long d = ds[i % 10];
        Quadratic theta(ta, tb, d);
        Quadratic alpha;
        if (i % 3 == 0) {
            alpha = Quadratic(rnd_q());
        } else {
            alpha = Quadratic(rnd_q(), rnd_q(), d);
        }
        mpz_class m(mval(rng));
        mpz_class got = hmlab::floor_linear(m, RealScalar(theta),
                                            RealScalar(alpha));
        mpz_class want = oracle::floor_ref(m, theta, alpha);
        REQUIRE(got == want);
    }
}

TEST_CASE("floor_linear decides exact hits and gives up on pinned streams") {
    // Field data landing exactly on an integer is decided by exact
    // arithmetic, not by refinement.
    CHECK(hmlab::floor_linear(3, RealScalar(mpq_class(1, 4)),
                              RealScalar(mpq_class(1, 4)), 64) == 1);
    // A stream whose every answer straddles 1 can never decide the floor.
    hmlab::Stream s([](long p) {
        hmlab::Dyadic eps(mpz_class(1), -(p + 1));
        return hmlab::Enclosure(hmlab::Dyadic(1) - eps, hmlab::Dyadic(1) + eps);
    });
    CHECK_THROWS_AS(
        hmlab::floor_linear(1, RealScalar(s), RealScalar(mpq_class(0)), 64),
        hmlab::PrecisionExhausted);
    // Irrational theta with the same rational data is decidable.
    RealScalar th(Quadratic(mpq_class(1, 4), mpq_class(1, 1000), 2));
    CHECK(hmlab::floor_linear(3, th, RealScalar(mpq_class(1, 4))) == 1);
}

TEST_CASE("frac_condition reports the side of 1") {
    Quadratic theta(mpq_class(1), mpq_class(-1, 2), 2);
    RealScalar th(theta), al(theta);
    // {4 theta} ~ 0.1716, {7 theta} ~ 0.0503: sum with {3 theta} etc.
    // stays away from 1; spot-check both orders.
    RealScalar t1(Quadratic(mpq_class(7)) * theta);
    hmlab::Ordering o1 = hmlab::frac_condition(3, th, al, t1);
    // {3 theta + theta} + {7 theta} = 0.1716 + 0.0503 < 1.
    CHECK(o1 == hmlab::Ordering::Less);
    RealScalar t2(Quadratic(mpq_class(10)) * theta);
    // {9 theta + theta} + {10 theta} = 0.9289 + 0.9289 > 1.
    hmlab::Ordering o2 = hmlab::frac_condition(9, th, al, t2);
    CHECK(o2 == hmlab::Ordering::Greater);
    // Exact tie: rational data summing to exactly 1.
    hmlab::Ordering tie = hmlab::frac_condition(
        0, RealScalar(mpq_class(0)), RealScalar(mpq_class(1, 2)),
        RealScalar(mpq_class(1, 2)), 64);
    CHECK(tie == hmlab::Ordering::Undecided);
}

TEST_CASE("stream results stay nested even when the generator widens") {
    int calls = 0;
    hmlab::Stream s([&calls](long p) {
        ++calls;
        // Sloppy generator: after the first call it answers with a fixed
        // 4-bit interval no matter what was requested.
        long eff = calls == 1 ? p : 4;
        return Quadratic(mpq_class(0), mpq_class(1), 3).enclose(eff);
    });
    RealScalar x(s);
    CHECK(!x.exact());
    hmlab::Enclosure a = x.refine(50);
    hmlab::Enclosure b = x.refine(10);
    CHECK(a.contains(b));
    // The early tight answer is not forgotten.
    CHECK(b.width_within(50));
    hmlab::Enclosure c = x.refine(60);
    CHECK(b.contains(c));
    CHECK(calls == 3);
}
