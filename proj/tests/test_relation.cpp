#include "hmlab/relation.hpp"

#include "doctest.h"
#include "hmlab/errors.hpp"
#include "hmlab/quadratic.hpp"
#include "hmlab/series.hpp"

using hmlab::Enclosure;
using hmlab::Quadratic;
using hmlab::RelationOutcome;

TEST_CASE("known minimal polynomials are recovered") {
    Quadratic r2(mpq_class(0), mpq_class(1), 2);
    hmlab::RelationReport rep =
        hmlab::integer_relation(r2.enclose(128), 2, mpz_class(10), 128);
    CHECK(rep.outcome == RelationOutcome::RelationFound);
    CHECK(rep.coeffs == std::vector<mpz_class>{-2, 0, 1});
    CHECK(rep.residual.contains_zero());

    hmlab::RelationReport lin = hmlab::integer_relation(
        Quadratic(mpq_class(7, 3)).enclose(128), 1, mpz_class(10), 128);
    CHECK(lin.outcome == RelationOutcome::RelationFound);
    CHECK(lin.coeffs == std::vector<mpz_class>{-7, 3});

    Quadratic golden(mpq_class(1, 2), mpq_class(1, 2), 5);
    hmlab::RelationReport g =
        hmlab::integer_relation(golden.enclose(160), 2, mpz_class(100), 160);
    CHECK(g.outcome == RelationOutcome::RelationFound);
    CHECK(g.coeffs == std::vector<mpz_class>{-1, -1, 1});
}

TEST_CASE("degree margin keeps the minimal polynomial") {
    // At degree bound 2 the line 3x - 7 still wins over its multiples.
    hmlab::RelationReport rep = hmlab::integer_relation(
        Quadratic(mpq_class(7, 3)).enclose(128), 2, mpz_class(100), 128);
    CHECK(rep.outcome == RelationOutcome::RelationFound);
    CHECK(rep.coeffs == std::vector<mpz_class>{-7, 3, 0});
}

TEST_CASE("a certified negative answer clears the exclusion bound") {
    // sqrt(2) has no degree-1 relation of height 50; the shortest lattice
    // vector must exceed the bound by a wide margin at this precision.
    Quadratic r2(mpq_class(0), mpq_class(1), 2);
    hmlab::RelationReport rep =
        hmlab::integer_relation(r2.enclose(160), 1, mpz_class(50), 160);
    CHECK(rep.outcome == RelationOutcome::NoRelationFound);
    CHECK(rep.coeffs.empty());
    CHECK(rep.shortest_norm_sq > rep.exclusion_bound_sq);
}

TEST_CASE("inconclusive reductions raise instead of guessing") {
    Quadratic r2(mpq_class(0), mpq_class(1), 2);
    CHECK_THROWS_AS(
        hmlab::integer_relation(r2.enclose(8), 1, mpz_class(5), 8),
        hmlab::PrecisionTooLow);
}

TEST_CASE("input contract violations") {
    Quadratic r2(mpq_class(0), mpq_class(1), 2);
    CHECK_THROWS_AS(hmlab::integer_relation(r2.enclose(64), 0, mpz_class(10), 64),
                    hmlab::ValueError);
    CHECK_THROWS_AS(hmlab::integer_relation(r2.enclose(64), 2, mpz_class(0), 64),
                    hmlab::ValueError);
    CHECK_THROWS_AS(hmlab::integer_relation(r2.enclose(64), 2, mpz_class(10), 4),
                    hmlab::ValueError);
    // Enclosure wider than the stated precision.
    CHECK_THROWS_AS(hmlab::integer_relation(r2.enclose(32), 2, mpz_class(10), 64),
                    hmlab::ValueError);
}

TEST_CASE("found relations always have residuals consistent with zero") {
    // A sweep over small algebraic inputs; whatever the outcome, a returned
    // relation must not contradict its own residual interval.
    const long data[][3] = {{2, 3, 2}, {1, 2, 3}, {5, 7, 2}, {0, 1, 7},
                            {3, 4, 11}, {1, 5, 6}};
    for (const auto& row : data) {
        Quadratic x(mpq_class(row[0]), mpq_class(1, row[1]), row[2]);
        hmlab::RelationReport rep =
            hmlab::integer_relation(x.enclose(192), 2, mpz_class(10000), 192);
        if (rep.outcome == RelationOutcome::RelationFound) {
            CHECK(rep.residual.contains_zero());
            CHECK(!rep.coeffs.empty());
            mpz_class top = 0;
            bool nonzero = false;
            for (const auto& c : rep.coeffs) {
                if (c != 0) nonzero = true;
                if (abs(c) > top) top = abs(c);
            }
            CHECK(nonzero);
            CHECK(top <= 10000);
        } else {
            CHECK(rep.shortest_norm_sq > rep.exclusion_bound_sq);
        }
    }
}

TEST_CASE("series value resists low degree relations") {
    hmlab::SeriesSpec spec(
        hmlab::parse_poly("0,1"),
        hmlab::RealScalar(Quadratic(mpq_class(1), mpq_class(-1, 2), 2)),
        hmlab::RealScalar(Quadratic(mpq_class(1), mpq_class(-1, 2), 2)),
        Quadratic(2));
    Enclosure v = hmlab::eval_series(spec, 256).value;
    hmlab::RelationReport rep =
        hmlab::integer_relation(v, 4, mpz_class(1000000), 256);
    CHECK(rep.outcome == RelationOutcome::NoRelationFound);
}
