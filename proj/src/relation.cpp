#include "hmlab/relation.hpp"

#include <algorithm>
#include <optional>

#include "hmlab/errors.hpp"
#include "hmlab/lll.hpp"
#include "hmlab/places.hpp"

namespace hmlab {

namespace {

Dyadic dyadic_pow_exact(const Dyadic& v, unsigned long k) {
    if (k == 0) return Dyadic(1);
    mpz_class man;
    mpz_pow_ui(man.get_mpz_t(), v.man().get_mpz_t(), k);
    return Dyadic(std::move(man), v.exp() * static_cast<long>(k));
}

mpq_class norm_sq(const std::vector<mpz_class>& row) {
    mpz_class s = 0;
    for (const mpz_class& v : row) s += v * v;
    return mpq_class(s);
}

}  // namespace

RelationReport integer_relation(const Enclosure& x, unsigned degree,
                                const mpz_class& height, long p) {
    if (degree < 1) throw ValueError("degree must be at least 1");
    if (height < 1) throw ValueError("height bound must be at least 1");
    if (p < 8) throw ValueError("working precision is too small");
    if (!x.width_within(p)) {
        throw ValueError("input enclosure is wider than the working grid");
    }

    const unsigned D = degree;
    const mpq_class two_p = mpq_pow_si(mpq_class(2), p);
    const mpq_class grid = 1 / two_p;

    // Snap the midpoint to the grid; every error term below is charged to
    // wmax, the larger of the enclosure width and one grid step.
    Dyadic xt = x.mid().round_down(p);
    mpq_class wmax = std::max(x.width().to_mpq(), grid);
    Dyadic abs_hi = x.abs().hi();
    mpq_class mx = abs_hi.to_mpq() + grid;
    if (mx < 1) mx = 1;
    mpq_class mx_pow = mpq_pow_si(mx, D);

    // Integer image of the powers at scale 2^p.
    std::vector<Dyadic> xpow(D + 1);
    std::vector<mpz_class> y(D + 1);
    const Dyadic half(mpz_class(1), -1);
    for (unsigned k = 0; k <= D; ++k) {
        xpow[k] = dyadic_pow_exact(xt, k);
        y[k] = (xpow[k].mul_pow2(p) + half).floor();
    }

    std::vector<std::vector<mpz_class>> basis(
        D + 1, std::vector<mpz_class>(D + 2, 0));
    for (unsigned k = 0; k <= D; ++k) {
        basis[k][k] = 1;
        basis[k][D + 1] = y[k];
    }
    lll_reduce(basis);

    RelationReport report;
    report.degree = D;
    report.height = height;
    report.precision = p;
    report.threshold = mpq_class(D + 1) * mpq_class(height) * wmax * mx_pow;
    report.shortest_norm_sq = norm_sq(basis[0]);

    // Any true relation maps to a lattice vector no longer than B.
    mpq_class err = mpq_class(3, 2) * wmax;
    mpq_class t1 = two_p * D * mx_pow * err + mpq_class(1, 2);
    mpq_class t_cert = mpq_class(D + 1) * mpq_class(height) * t1;
    mpq_class b_sq =
        mpq_class(D + 1) * mpq_class(height * height) + t_cert * t_cert;
    report.exclusion_bound_sq = mpq_pow_si(mpq_class(2), D) * b_sq;

    std::vector<Enclosure> xe(D + 1);
    for (unsigned k = 0; k <= D; ++k) xe[k] = x.pow(k);

    std::optional<std::size_t> best;
    for (std::size_t rix = 0; rix < basis.size(); ++rix) {
        const auto& row = basis[rix];
        bool nonzero = false;
        bool bounded = true;
        for (unsigned k = 0; k <= D; ++k) {
            if (row[k] != 0) nonzero = true;
            if (abs(row[k]) > height) bounded = false;
        }
        if (!nonzero || !bounded) continue;
        Dyadic resid;
        for (unsigned k = 0; k <= D; ++k) {
            resid = resid + xpow[k] * Dyadic(row[k], 0);
        }
        if (!(resid.abs().to_mpq() < report.threshold)) continue;
        Enclosure full = Enclosure::point(Dyadic(0));
        for (unsigned k = 0; k <= D; ++k) {
            full = full + xe[k].scale(Dyadic(row[k], 0));
        }
        if (!full.contains_zero()) continue;
        if (!best || norm_sq(row) < norm_sq(basis[*best])) best = rix;
    }

    if (best) {
        std::vector<mpz_class> c(basis[*best].begin(),
                                 basis[*best].begin() + D + 1);
        mpz_class g = 0;
        for (const mpz_class& v : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        for (mpz_class& v : c) v /= g;
        for (unsigned k = D + 1; k-- > 0;) {
            if (c[k] != 0) {
                if (c[k] < 0) {
                    for (mpz_class& v : c) v = -v;
                }
                break;
            }
        }
        Enclosure full = Enclosure::point(Dyadic(0));
        for (unsigned k = 0; k <= D; ++k) {
            full = full + xe[k].scale(Dyadic(c[k], 0));
        }
        report.outcome = RelationOutcome::RelationFound;
        report.coeffs = std::move(c);
        report.residual = full;
        return report;
    }

    if (report.shortest_norm_sq > report.exclusion_bound_sq) {
        report.outcome = RelationOutcome::NoRelationFound;
        return report;
    }
    throw PrecisionTooLow("lattice search is inconclusive at this precision");
}

}  // namespace hmlab
