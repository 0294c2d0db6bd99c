#include "hmlab/floorseq.hpp"

#include "doctest.h"
#include "hmlab/errors.hpp"
#include "oracle.hpp"

using hmlab::DifferenceScheme;
using hmlab::FloorSeq;
using hmlab::IntPolynomial;
using hmlab::Quadratic;
using hmlab::RealScalar;
using hmlab::Window;

namespace {

Quadratic theta_q() { return Quadratic(mpq_class(1), mpq_class(-1, 2), 2); }

FloorSeq example_seq() {
    return FloorSeq(hmlab::parse_poly("0,1"), RealScalar(theta_q()),
                    RealScalar(theta_q()));
}

DifferenceScheme example_scheme(unsigned sigma) {
    hmlab::ContinuedFraction cf = hmlab::expand(RealScalar(theta_q()), 8);
    return DifferenceScheme::from_table(sigma, hmlab::ConvergentTable(cf));
}

}  // namespace

TEST_CASE("window literals parse") {
    Window w = hmlab::parse_window("3:17");
    CHECK(w.lo == 3);
    CHECK(w.hi == 17);
    CHECK_THROWS_AS(hmlab::parse_window("5"), hmlab::ValueError);
    CHECK_THROWS_AS(hmlab::parse_window("9:2"), hmlab::ValueError);
}

TEST_CASE("floor sequence opening values") {
    FloorSeq fs = example_seq();
    std::vector<long> want = {0, 0, 0, 1, 1, 1, 2, 2, 2, 2};
    for (std::size_t m = 0; m < want.size(); ++m) {
        CHECK(fs.u(m) == want[m]);
        CHECK(fs.floor_at(m) == want[m]);
    }
    // Identity polynomial: u and the floor agree everywhere; square them
    // through a second sequence to cover the f path.
    FloorSeq sq(hmlab::parse_poly("0,0,1"), RealScalar(theta_q()),
                RealScalar(theta_q()));
    CHECK(sq.u(6) == 4);
    CHECK(sq.u(13) == 16);
}

TEST_CASE("incremental floors agree with the reference on a long window") {
    FloorSeq fs = example_seq();
    Quadratic th = theta_q();
    for (long m = 0; m <= 3000; m += 97) {
        CHECK(fs.floor_at(m) == oracle::floor_ref(m, th, th));
    }
}

TEST_CASE("u_seq slices the cached values") {
    std::vector<mpz_class> u =
        hmlab::u_seq(hmlab::parse_poly("0,1"), RealScalar(theta_q()),
                     RealScalar(theta_q()), Window{3, 6});
    CHECK(u == std::vector<mpz_class>{1, 1, 1, 2});
}

TEST_CASE("difference scheme bookkeeping") {
    DifferenceScheme ds = example_scheme(2);
    CHECK(ds.weights() == std::vector<mpz_class>{1, -2, 1});
    CHECK(ds.first_index() == 0);
    CHECK(ds.shift(2) == 7);
    CHECK(ds.shift(4) == 41);
    CHECK_THROWS(ds.shift(99));

    hmlab::ContinuedFraction cf = hmlab::expand(RealScalar(theta_q()), 24);
    hmlab::IndexSelection sel =
        hmlab::select_indices(cf, hmlab::SelectionMode::Bounded, 4);
    DifferenceScheme fromsel = DifferenceScheme::from_selection(3, sel);
    CHECK(fromsel.first_index() == 1);
    CHECK(fromsel.shift(1) == 7);
    CHECK(fromsel.shift(2) == 41);
}

TEST_CASE("w_scan reproduces the frozen nonzero sets") {
    FloorSeq fs = example_seq();
    DifferenceScheme ds = example_scheme(2);
    Window w{0, 70};

    hmlab::SparsitySlice s2 = hmlab::w_scan(ds, fs, 2, w);
    std::vector<long> pos2;
    for (auto& [m, wv] : s2.entries) pos2.push_back(m);
    CHECK(pos2 == std::vector<long>{9, 16, 26, 33, 50, 57, 67});
    CHECK(s2.entries[0].second == 1);
    CHECK(s2.entries[1].second == -1);
    CHECK(s2.r == 7);
    REQUIRE(s2.mu.has_value());
    CHECK(*s2.mu == 7);

    hmlab::SparsitySlice s3 = hmlab::w_scan(ds, fs, 3, w);
    std::vector<long> pos3;
    for (auto& [m, wv] : s3.entries) pos3.push_back(m);
    CHECK(pos3 == std::vector<long>{23, 40, 64});

    hmlab::SparsitySlice s4 = hmlab::w_scan(ds, fs, 4, w);
    REQUIRE(s4.entries.size() == 1);
    CHECK(s4.entries[0].first == 57);
}

TEST_CASE("gap bound scales epsilon by shift over sigma") {
    FloorSeq fs = example_seq();
    DifferenceScheme ds = example_scheme(2);
    hmlab::SparsitySlice s = hmlab::w_scan(ds, fs, 2, Window{0, 500});
    hmlab::GapReport g = hmlab::gap_check(s, mpq_class(2, 5), 2);
    CHECK(g.bound == mpq_class(7, 5));
    CHECK(g.min_gap == 7);
    CHECK(g.pass);
    // An epsilon too large to honor must flip the verdict.
    hmlab::GapReport bad = hmlab::gap_check(s, mpq_class(5, 2), 2);
    CHECK(bad.bound == mpq_class(35, 4));
    CHECK(!bad.pass);
}

TEST_CASE("classification matches the scan on a window") {
    FloorSeq fs = example_seq();
    DifferenceScheme ds = example_scheme(2);
    for (std::size_t n : {2, 3, 4}) {
        hmlab::SparsitySlice s = hmlab::w_scan(ds, fs, n, Window{0, 300});
        hmlab::ConsistencyReport rep = hmlab::check_case_consistency(ds, fs, s);
        CHECK(rep.pass);
        CHECK(rep.checked == 301);
        CHECK(rep.mismatches.empty());
        CHECK(rep.undecided.empty());
    }
    hmlab::ClassifyResult c =
        hmlab::classify(9, ds, 2, RealScalar(theta_q()), RealScalar(theta_q()));
    CHECK(c.kind == hmlab::CaseKind::Boundary);
    CHECK(c.ell == 1);
    hmlab::ClassifyResult z =
        hmlab::classify(10, ds, 2, RealScalar(theta_q()), RealScalar(theta_q()));
    CHECK(z.kind == hmlab::CaseKind::Zero);
}

TEST_CASE("variation stays bounded with the quadratic growth exponent") {
    FloorSeq fs = example_seq();
    DifferenceScheme ds = example_scheme(2);
    std::vector<hmlab::SparsitySlice> slices;
    for (std::size_t n : {2, 3, 4})
        slices.push_back(hmlab::w_scan(ds, fs, n, Window{0, 800}));
    hmlab::VariationReport v = hmlab::variation_fit(slices, 0);
    CHECK(v.pass);
    CHECK(v.c_max > 0);
    CHECK(v.per_slice.size() == 3);
}

TEST_CASE("boundary fit produces a positive two-sided envelope") {
    FloorSeq fs(hmlab::parse_poly("0,0,1"), RealScalar(theta_q()),
                RealScalar(theta_q()));
    DifferenceScheme ds = example_scheme(3);
    std::vector<hmlab::SparsitySlice> slices;
    for (std::size_t n : {2, 3, 4})
        slices.push_back(hmlab::w_scan(ds, fs, n, Window{0, 1500}));
    hmlab::BoundaryFitReport b = hmlab::boundary_fit(slices, 3);
    CHECK(b.pass);
    CHECK(b.count > 0);
    CHECK(b.eps1 > 0);
    CHECK(b.eps1 <= b.eps2);
}

TEST_CASE("diophantine spacing check on exact data") {
    hmlab::DioReport d = hmlab::dio_check(RealScalar(theta_q()), mpz_class(41),
                                          mpq_class(2, 5), 2);
    CHECK(d.pass);
    CHECK(d.q_bound == mpq_class(41, 5));
    CHECK(d.violations.empty());
    for (const auto& q : d.qualifying) CHECK(q >= d.q_bound);
}
