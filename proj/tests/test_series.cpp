#include "hmlab/series.hpp"

#include <random>

#include "doctest.h"
#include "hmlab/errors.hpp"
#include "hmlab/places.hpp"

using hmlab::Quadratic;
using hmlab::RealScalar;
using hmlab::SeriesSpec;

namespace {

Quadratic theta_q() { return Quadratic(mpq_class(1), mpq_class(-1, 2), 2); }

SeriesSpec example_spec() {
    return SeriesSpec(hmlab::parse_poly("0,1"), RealScalar(theta_q()),
                      RealScalar(theta_q()), Quadratic(2));
}

// Exact partial sum of the series for rational beta, plus a crude but
// rigorous tail cap: u_m <= m for f = x here, and the leftover geometric
// factor is at most 2.
mpq_class exact_partial(const hmlab::FloorSeq& fs, const mpq_class& binv,
                        long M) {
    mpq_class acc = 0, pw = 1;
    for (long m = 0; m <= M; ++m) {
        acc += mpq_class(fs.u(m)) * pw;
        pw *= binv;
    }
    return acc;
}

}  // namespace

TEST_CASE("a contracting base is required") {
    CHECK_THROWS_AS(SeriesSpec(hmlab::parse_poly("0,1"), RealScalar(theta_q()),
                               RealScalar(theta_q()), Quadratic(1)),
                    hmlab::DivergentSpec);
    CHECK_THROWS_AS(SeriesSpec(hmlab::parse_poly("0,1"), RealScalar(theta_q()),
                               RealScalar(theta_q()),
                               Quadratic(mpq_class(-1, 2))),
                    hmlab::DivergentSpec);
    // |beta| > 1 with beta negative converges fine.
    SeriesSpec s(hmlab::parse_poly("0,1"), RealScalar(theta_q()),
                 RealScalar(theta_q()), Quadratic(-2));
    CHECK(hmlab::eval_series(s, 32).value.width_within(32));
}

TEST_CASE("series enclosure contains the exact partial sums") {
    SeriesSpec spec = example_spec();
    hmlab::SeriesValue v = hmlab::eval_series(spec, 128);
    CHECK(v.value.width_within(128));

    hmlab::FloorSeq fs(hmlab::parse_poly("0,1"), RealScalar(theta_q()),
                       RealScalar(theta_q()));
    long M = 300;
    mpq_class partial = exact_partial(fs, mpq_class(1, 2), M);
    // Tail: sum_{m>M} m 2^-m <= 2 (M+1) 2^-(M+1).
    mpq_class tail = mpq_class(2 * (M + 1)) *
                     hmlab::mpq_pow_si(mpq_class(1, 2), M + 1);
    CHECK(v.value.lo().to_mpq() <= partial + tail);
    CHECK(partial <= v.value.hi().to_mpq());
}

TEST_CASE("higher precision nests inside lower") {
    SeriesSpec spec = example_spec();
    hmlab::Enclosure e128 = hmlab::eval_series(spec, 128).value;
    hmlab::Enclosure e256 = hmlab::eval_series(spec, 256).value;
    CHECK(e128.contains(e256));
    CHECK(e256.width_within(256));
}

TEST_CASE("zero polynomial sums to zero") {
    SeriesSpec spec(hmlab::parse_poly("0"), RealScalar(theta_q()),
                    RealScalar(theta_q()), Quadratic(2));
    hmlab::SeriesValue v = hmlab::eval_series(spec, 64);
    CHECK(v.value.lo().is_zero());
    CHECK(v.value.hi().is_zero());
}

TEST_CASE("quadratic base series evaluates with certified width") {
    SeriesSpec spec(hmlab::parse_poly("0,1"), RealScalar(theta_q()),
                    RealScalar(theta_q()),
                    Quadratic(mpq_class(1), mpq_class(1), 2));
    hmlab::SeriesValue v = hmlab::eval_series(spec, 96);
    CHECK(v.value.width_within(96));
    // beta ~ 2.414 > 2, so this series is smaller than the base-2 one.
    hmlab::SeriesValue ref = hmlab::eval_series(example_spec(), 96);
    CHECK(v.value.hi() < ref.value.hi());
}

TEST_CASE("series stream is a refinable scalar") {
    hmlab::Stream s = hmlab::series_stream(example_spec());
    hmlab::Enclosure a = s.at(40);
    hmlab::Enclosure b = s.at(120);
    CHECK(a.width_within(40));
    CHECK(b.width_within(120));
    CHECK(a.contains(b));
}

TEST_CASE("polynomial tail majorant dominates brute force") {
    std::mt19937 rng(606);
    std::uniform_int_distribution<long> cd(1, 8);
    std::uniform_int_distribution<long> tn(1, 9);
    for (int trial = 0; trial < 60; ++trial) {
        mpz_class C(cd(rng));
        unsigned D = static_cast<unsigned>(cd(rng) % 4);
        long offset = cd(rng) % 5;
        mpq_class t(tn(rng), 10);
        long M = 5 + cd(rng);
        auto bound = hmlab::polynomial_geometric_tail(C, D, offset,
                                                      Quadratic(t), M);
        if (!bound) continue;
        // Brute partial of the tail plus a clean geometric cap for the rest.
        mpq_class sum = 0;
        long K = M + 400;
        for (long m = M + 1; m <= K; ++m) {
            mpq_class term = mpq_class(C);
            for (unsigned j = 0; j < D; ++j) term *= (m + offset);
            term *= hmlab::mpq_pow_si(t, m);
            sum += term;
        }
        CHECK(Quadratic(sum).cmp(*bound) <= 0);
    }
    // Below the ratio-test threshold the bound must refuse.
    auto refused = hmlab::polynomial_geometric_tail(mpz_class(1), 6, 0,
                                                    Quadratic(mpq_class(9, 10)),
                                                    1);
    CHECK(!refused.has_value());
}
