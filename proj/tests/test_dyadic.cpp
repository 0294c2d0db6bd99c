#include "hmlab/dyadic.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "doctest.h"

using hmlab::Dyadic;
using hmlab::Enclosure;

TEST_CASE("dyadic canonical form keeps the mantissa odd") {
    Dyadic a(mpz_class(12), 0);
    CHECK(a.man() == 3);
    CHECK(a.exp() == 2);
    CHECK(Dyadic(mpz_class(0), 17).exp() == 0);
    CHECK(Dyadic(mpz_class(-8), -1) == Dyadic(mpz_class(-1), 2));
}

TEST_CASE("dyadic arithmetic round trips through mpq") {
    Dyadic a(mpz_class(5), -3);   // 5/8
    Dyadic b(mpz_class(-7), -2);  // -7/4
    CHECK((a + b).to_mpq() == mpq_class(5, 8) - mpq_class(7, 4));
    CHECK((a - b).to_mpq() == mpq_class(5, 8) + mpq_class(7, 4));
    CHECK((a * b).to_mpq() == mpq_class(-35, 32));
    CHECK(a.mul_pow2(4).to_mpq() == 10);
    CHECK((-a).to_mpq() == mpq_class(-5, 8));
    CHECK(b.abs().to_mpq() == mpq_class(7, 4));
}

TEST_CASE("floor and ceil agree with the rational value") {
    CHECK(Dyadic(mpz_class(5), -3).floor() == 0);
    CHECK(Dyadic(mpz_class(5), -3).ceil() == 1);
    CHECK(Dyadic(mpz_class(-5), -3).floor() == -1);
    CHECK(Dyadic(mpz_class(-5), -3).ceil() == 0);
    CHECK(Dyadic(mpz_class(3), 2).floor() == 12);
    CHECK(Dyadic(mpz_class(3), 2).ceil() == 12);
    CHECK(Dyadic().floor() == 0);
}

TEST_CASE("directed rounding never moves toward the value") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<long> man(-4000, 4000);
    std::uniform_int_distribution<long> ex(-30, 30);
    std::uniform_int_distribution<long> grid(0, 20);
    for (int i = 0; i < 2000; ++i) {
        Dyadic v(mpz_class(man(rng)), ex(rng));
        long p = grid(rng);
        Dyadic down = v.round_down(p), up = v.round_up(p);
        CHECK(down <= v);
        CHECK(v <= up);
        mpq_class step = mpq_class(1) / (mpz_class(1) << p);
        CHECK(v.to_mpq() - down.to_mpq() < step);
        CHECK(up.to_mpq() - v.to_mpq() < step);
    }
}

TEST_CASE("from_mpq brackets the rational") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<long> num(-5000, 5000);
    std::uniform_int_distribution<long> den(1, 5000);
    for (int i = 0; i < 2000; ++i) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        long p = 1 + (i % 60);
        Dyadic lo = Dyadic::from_mpq_down(q, p);
        Dyadic hi = Dyadic::from_mpq_up(q, p);
        CHECK(lo.to_mpq() <= q);
        CHECK(q <= hi.to_mpq());
        mpq_class step = mpq_class(1) / (mpz_class(1) << p);
        CHECK(hi.to_mpq() - lo.to_mpq() <= step);
    }
}

// sqrt_down/up are self-certifying: squaring the result and its one-ulp
// neighbour pins the exact integer square root of the scaled mantissa.
TEST_CASE("dyadic sqrt brackets tightly at every grid") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> man(1, 1 << 20);
    std::uniform_int_distribution<long> ex(-25, 25);
    std::uniform_int_distribution<long> grid(1, 80);
    for (int i = 0; i < 1500; ++i) {
        Dyadic v(mpz_class(man(rng)), ex(rng));
        long p = grid(rng);
        mpq_class vq = v.to_mpq();
        mpq_class step = mpq_class(1) / (mpz_class(1) << p);

        Dyadic s = v.sqrt_down(p);
        mpq_class sq = s.to_mpq();
        CHECK(sq * sq <= vq);
        mpq_class next = sq + step;
        CHECK(next * next > vq);

        Dyadic u = v.sqrt_up(p);
        mpq_class uq = u.to_mpq();
        CHECK(uq * uq >= vq);
        if (uq > step) {
            mpq_class prev = uq - step;
            CHECK(prev * prev < vq);
        }
    }
    CHECK(Dyadic().sqrt_down(10).is_zero());
    CHECK(Dyadic().sqrt_up(10).is_zero());
    CHECK_THROWS_AS(Dyadic(-1).sqrt_down(4), std::domain_error);
}

TEST_CASE("sqrt of two at an odd exponent") {
    // Regression guard: the mantissa shift is exp + 2p, and an exponent of
    // the wrong sign silently halves the root.
    Dyadic two(mpz_class(1), 1);
    Dyadic r = two.sqrt_down(40);
    mpq_class rq = r.to_mpq();
    CHECK(rq * rq <= 2);
    CHECK(rq > mpq_class(14, 10));
    CHECK(rq < mpq_class(15, 10));
}

TEST_CASE("enclosure interval arithmetic is outward") {
    Enclosure a(Dyadic(1), Dyadic(2));
    Enclosure b(Dyadic(-3), Dyadic(mpz_class(1), -1));
    Enclosure s = a + b;
    CHECK(s.lo() == Dyadic(-2));
    CHECK(s.hi() == Dyadic(mpz_class(5), -1));
    Enclosure d = a - b;
    CHECK(d.lo() == Dyadic(mpz_class(1), -1));
    CHECK(d.hi() == Dyadic(5));
    Enclosure p = a * b;
    CHECK(p.lo() == Dyadic(-6));
    CHECK(p.hi() == Dyadic(1));
    CHECK(a.intersects(Enclosure(Dyadic(2), Dyadic(4))));
    CHECK(!a.intersects(Enclosure(Dyadic(3), Dyadic(4))));
    CHECK_THROWS(a.intersect(Enclosure(Dyadic(3), Dyadic(4))));
    CHECK(Enclosure(Dyadic(-1), Dyadic(2)).contains_zero());
    CHECK(!Enclosure(Dyadic(1), Dyadic(2)).contains_zero());
}

TEST_CASE("interval product contains all endpoint products") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> c(-50, 50);
    for (int i = 0; i < 500; ++i) {
        long x1 = c(rng), x2 = c(rng), y1 = c(rng), y2 = c(rng);
        if (x1 > x2) std::swap(x1, x2);
        if (y1 > y2) std::swap(y1, y2);
        Enclosure a{Dyadic(x1), Dyadic(x2)};
        Enclosure b{Dyadic(y1), Dyadic(y2)};
        Enclosure p = a * b;
        for (long xe : {x1, x2})
            for (long ye : {y1, y2}) CHECK(p.contains(Dyadic(xe * ye)));
    }
}

TEST_CASE("interval power is monotone in the exponent data") {
    Enclosure a(Dyadic(mpz_class(-3), -1), Dyadic(2));  // [-1.5, 2]
    Enclosure sq = a.pow(2);
    // Even powers of a straddling interval must start at zero, not at the
    // product of mixed endpoints.
    CHECK(sq.lo() == Dyadic(0));
    CHECK(sq.hi() == Dyadic(4));
    Enclosure cu = a.pow(3);
    CHECK(cu.lo() == Dyadic(mpz_class(-27), -3));
    CHECK(cu.hi() == Dyadic(8));
    CHECK(a.pow(0).lo() == Dyadic(1));
    CHECK(a.pow(0).hi() == Dyadic(1));
}

TEST_CASE("sqrt_out encloses the square root of both ends") {
    Enclosure a(Dyadic(2), Dyadic(3));
    Enclosure r = a.sqrt_out(50);
    mpq_class lo = r.lo().to_mpq(), hi = r.hi().to_mpq();
    CHECK(lo * lo <= 2);
    CHECK(hi * hi >= 3);
    // A point input comes back as thin as the grid allows.
    Enclosure p = Enclosure::point(Dyadic(2)).sqrt_out(50);
    CHECK(p.lo().to_mpq() * p.lo().to_mpq() <= 2);
    CHECK(p.hi().to_mpq() * p.hi().to_mpq() >= 2);
    CHECK(p.width_within(48));
}

TEST_CASE("approx_log2 tracks the magnitude") {
    CHECK(hmlab::approx_log2(Dyadic(1)) == doctest::Approx(0.0));
    CHECK(hmlab::approx_log2(Dyadic(mpz_class(1), 100)) ==
          doctest::Approx(100.0));
    CHECK(hmlab::approx_log2(Dyadic(mpz_class(-3), -2)) ==
          doctest::Approx(std::log2(3.0) - 2));
    CHECK(hmlab::approx_log2(Dyadic()) == -std::numeric_limits<double>::infinity());
}
