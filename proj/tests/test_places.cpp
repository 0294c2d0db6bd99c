#include "hmlab/places.hpp"

#include <random>

#include "doctest.h"
#include "hmlab/errors.hpp"

using hmlab::FinitePlace;
using hmlab::PlaceSet;
using hmlab::PrimeSplitting;
using hmlab::QuadField;
using hmlab::Quadratic;

namespace {

Quadratic rnd_elt(std::mt19937& rng, long d) {
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 50);
    mpq_class a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    if (d == 0) return Quadratic(a == 0 ? mpq_class(1) : a);
    if (b == 0) b = 1;
    return Quadratic(a, b, d);
}

}  // namespace

TEST_CASE("field whitelist is enforced") {
    CHECK(QuadField(mpz_class(0)).degree() == 1);
    CHECK(QuadField(mpz_class(2)).degree() == 2);
    CHECK_THROWS_AS(QuadField(mpz_class(5)), hmlab::UnsupportedField);
    CHECK_THROWS_AS(QuadField(mpz_class(13)), hmlab::UnsupportedField);
    CHECK_THROWS_AS(QuadField(mpz_class(10)), hmlab::UnsupportedField);
}

TEST_CASE("prime splitting in Q(sqrt(2))") {
    QuadField k(mpz_class(2));
    auto over2 = k.places_over(mpz_class(2));
    REQUIRE(over2.size() == 1);
    CHECK(over2[0].splitting == PrimeSplitting::Ramified);
    CHECK(over2[0].residue_norm == 2);

    auto over3 = k.places_over(mpz_class(3));
    REQUIRE(over3.size() == 1);
    CHECK(over3[0].splitting == PrimeSplitting::Inert);
    CHECK(over3[0].residue_norm == 9);

    auto over7 = k.places_over(mpz_class(7));
    REQUIRE(over7.size() == 2);
    CHECK(over7[0].splitting == PrimeSplitting::Split);
    CHECK(over7[0].residue_norm == 7);
    REQUIRE(over7[0].pi.has_value());
    mpq_class pn = over7[0].pi->norm();
    CHECK((pn == 7 || pn == -7));
    CHECK(over7[1].conj_index == 1);

    CHECK_THROWS_AS(k.places_over(mpz_class(6)), hmlab::ValueError);
}

TEST_CASE("orders at each splitting type") {
    QuadField k(mpz_class(2));
    Quadratic r2(mpq_class(0), mpq_class(1), 2);
    FinitePlace ram = k.places_over(mpz_class(2))[0];
    // sqrt(2) generates the ramified prime: ord counts half-powers of 2.
    CHECK(k.ord_at(ram, r2) == 1);
    CHECK(k.ord_at(ram, Quadratic(2)) == 2);
    CHECK(k.ord_at(ram, Quadratic(mpq_class(1, 2))) == -2);
    CHECK(k.ord_at(ram, r2 * Quadratic(mpq_class(3))) == 1);

    FinitePlace in3 = k.places_over(mpz_class(3))[0];
    CHECK(k.ord_at(in3, Quadratic(3)) == 1);
    CHECK(k.ord_at(in3, Quadratic(mpq_class(1, 9))) == -2);
    CHECK(k.ord_at(in3, r2) == 0);

    auto sp = k.places_over(mpz_class(7));
    // 3 + sqrt(2) has norm 7: order one at exactly one of the two places.
    Quadratic gen(mpq_class(3), mpq_class(1), 2);
    long o0 = k.ord_at(sp[0], gen), o1 = k.ord_at(sp[1], gen);
    CHECK(((o0 == 1 && o1 == 0) || (o0 == 0 && o1 == 1)));
    CHECK(k.ord_at(sp[0], Quadratic(7)) == 1);
    CHECK(k.ord_at(sp[1], Quadratic(7)) == 1);
    CHECK(k.ord_at(sp[0], gen * gen * Quadratic(mpq_class(1, 7))) ==
          2 - k.ord_at(sp[0], Quadratic(7)));

    CHECK_THROWS_AS(k.ord_at(ram, Quadratic(0)), hmlab::ValueError);
}

TEST_CASE("product formula holds on random elements") {
    std::mt19937 rng(808);
    QuadField q0(mpz_class(0)), q2(mpz_class(2));
    for (int i = 0; i < 100; ++i) {
        CHECK(hmlab::verify_product_formula(q0, rnd_elt(rng, 0)));
        CHECK(hmlab::verify_product_formula(q2, rnd_elt(rng, 2)));
    }
}

TEST_CASE("place set construction for rational and quadratic beta") {
    PlaceSet s2 = hmlab::build_places(Quadratic(2));
    CHECK(s2.size() == 2);
    REQUIRE(s2.finite.size() == 1);
    CHECK(s2.finite[0].p == 2);
    CHECK(s2.finite[0].ord_beta == 1);
    CHECK(s2.kappa == 2);

    PlaceSet s32 = hmlab::build_places(Quadratic(mpq_class(3, 2)));
    CHECK(s32.finite.size() == 2);
    CHECK(s32.size() == 3);
    CHECK(s32.kappa >= 2);

    // A unit has no finite places at all.
    PlaceSet su = hmlab::build_places(Quadratic(mpq_class(1), mpq_class(1), 2));
    CHECK(su.finite.empty());
    CHECK(su.size() == 2);
    // kappa^2 must dominate the squared archimedean embedding.
    Quadratic arch = Quadratic(mpq_class(1), mpq_class(1), 2).pow(2);
    CHECK(Quadratic(s32.kappa * s32.kappa).cmp(Quadratic(mpq_class(9, 4))) >= 0);
    CHECK(Quadratic(su.kappa * su.kappa).cmp(arch) >= 0);

    CHECK_THROWS_AS(hmlab::build_places(Quadratic(mpq_class(1, 2))),
                    hmlab::ValueError);
    CHECK_THROWS_AS(hmlab::build_places(Quadratic(0)), hmlab::ValueError);
}

TEST_CASE("heights of small projective points") {
    hmlab::HeightValue h1 = hmlab::height({Quadratic(2), Quadratic(3)});
    CHECK(h1.deg == 1);
    CHECK(h1.hpow == Quadratic(3));
    hmlab::HeightValue h2 =
        hmlab::height({Quadratic(1), Quadratic(mpq_class(3, 2))});
    CHECK(h2.hpow == Quadratic(3));
    CHECK(h2.to_double() == doctest::Approx(3.0));

    // Scaling by 1/3 or by 7 cannot move a projective height.
    hmlab::HeightValue h3 = hmlab::height(
        {Quadratic(mpq_class(2, 3)), Quadratic(1)});
    CHECK(h3.hpow == Quadratic(3));

    // H(sqrt(2)) squared is 2: one big embedding, trivial finite part of
    // the primitive integer vector (sqrt(2) : 1).
    hmlab::HeightValue hr2 =
        hmlab::height({Quadratic(mpq_class(0), mpq_class(1), 2), Quadratic(1)});
    CHECK(hr2.deg == 2);
    CHECK(hr2.hpow == Quadratic(2));
}

TEST_CASE("height is invariant under field scaling") {
    std::mt19937 rng(1212);
    std::uniform_int_distribution<long> pick(0, 1);
    for (int i = 0; i < 50; ++i) {
        long d = pick(rng) ? 2 : 0;
        std::vector<Quadratic> point = {rnd_elt(rng, d), rnd_elt(rng, d),
                                        rnd_elt(rng, d)};
        hmlab::HeightValue base = hmlab::height(point);
        Quadratic lam = rnd_elt(rng, d);
        std::vector<Quadratic> scaled;
        for (const auto& x : point) scaled.push_back(x * lam);
        hmlab::HeightValue moved = hmlab::height(scaled);
        CHECK(base.hpow == moved.hpow);
    }
}

TEST_CASE("height_over matches the full height on S-unit points") {
    PlaceSet S = hmlab::build_places(Quadratic(2));
    // Coordinates are powers of 2 with a leading 1: S-integers for S={inf,2}.
    std::vector<Quadratic> point = {Quadratic(1), Quadratic(mpq_class(1, 8)),
                                    Quadratic(64)};
    hmlab::HeightValue full = hmlab::height(point);
    hmlab::HeightValue over = hmlab::height_over(S, point);
    CHECK(full.hpow == over.hpow);
    CHECK(full.deg == over.deg);

    // A coordinate with a denominator off S breaks the precondition.
    std::vector<Quadratic> bad = {Quadratic(1), Quadratic(mpq_class(1, 3))};
    CHECK_THROWS(hmlab::height_over(S, bad));
}

TEST_CASE("rational power helper covers negative exponents") {
    CHECK(hmlab::mpq_pow_si(mpq_class(3, 2), 3) == mpq_class(27, 8));
    CHECK(hmlab::mpq_pow_si(mpq_class(3, 2), -2) == mpq_class(4, 9));
    CHECK(hmlab::mpq_pow_si(mpq_class(5), 0) == 1);
    CHECK_THROWS_AS(hmlab::mpq_pow_si(mpq_class(0), -1), hmlab::ValueError);
}

TEST_CASE("factorization guard rails") {
    auto f = hmlab::factor_small(mpz_class(360));
    CHECK(f[mpz_class(2)] == 3);
    CHECK(f[mpz_class(3)] == 2);
    CHECK(f[mpz_class(5)] == 1);
    CHECK(hmlab::factor_small(mpz_class(-7))[mpz_class(7)] == 1);
    CHECK_THROWS_AS(hmlab::factor_small(mpz_class(0)), hmlab::ValueError);
}
