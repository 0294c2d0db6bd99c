#include "hmlab/series.hpp"

#include <cassert>

#include "hmlab/errors.hpp"

namespace hmlab {

SeriesSpec::SeriesSpec(IntPolynomial f_, RealScalar theta_, RealScalar alpha_,
                       Quadratic beta_)
    : f(std::move(f_)),
      theta(std::move(theta_)),
      alpha(std::move(alpha_)),
      beta(std::move(beta_)) {
    if (beta.is_zero() || beta.abs().cmp(Quadratic(1)) <= 0) {
        throw DivergentSpec("series needs |beta| > 1");
    }
}

std::optional<Quadratic> polynomial_geometric_tail(const mpz_class& C,
                                                   unsigned D, long offset,
                                                   const Quadratic& t, long M) {
    assert(t.sign() > 0 && t.cmp(Quadratic(1)) < 0);
    if (C == 0) return Quadratic(0);
    mpz_class lo = M + 1 + offset;
    mpz_class hi = M + 2 + offset;
    mpz_class lo_d, hi_d;
    mpz_pow_ui(lo_d.get_mpz_t(), lo.get_mpz_t(), D);
    mpz_pow_ui(hi_d.get_mpz_t(), hi.get_mpz_t(), D);
    Quadratic q0 = t * Quadratic(mpq_class(hi_d, lo_d));
    if (q0.cmp(Quadratic(1)) >= 0) return std::nullopt;
    Quadratic first = Quadratic(mpq_class(C * lo_d)) * t.pow(M + 1);
    return first * (Quadratic(1) - q0).inverse();
}

SeriesValue eval_series(const SeriesSpec& spec, long p) {
    if (p < 1) throw ValueError("precision must be positive");
    if (spec.f.is_zero()) {
        return {Enclosure::point(Dyadic(0)), 0};
    }
    Quadratic t = spec.beta.abs().inverse();
    mpz_class C = spec.f.abs_coeff_sum();
    unsigned D = static_cast<unsigned>(spec.f.degree());
    Quadratic target(mpq_class(mpz_class(1), mpz_class(1) << (p + 3)));

    long M = 16;
    std::optional<Quadratic> bound;
    // floor(m*theta+alpha) lies in [0, m+1), so C*(m+1)^D caps |f| there.
    while (true) {
        bound = polynomial_geometric_tail(C, D, 1, t, M);
        if (bound && bound->cmp(target) <= 0) break;
        M *= 2;
        if (M > (1L << 26)) {
            throw std::logic_error("series tail bound failed to shrink");
        }
    }

    FloorSeq fs(spec.f, spec.theta, spec.alpha);
    Quadratic binv = spec.beta.inverse();
    Quadratic acc(0);
    for (long m = M; m >= 0; --m) {
        acc = acc * binv + Quadratic(mpq_class(fs.u(m)));
    }

    long pe = p + 3;
    Enclosure lo_side = (acc - *bound).enclose(pe);
    Enclosure hi_side = (acc + *bound).enclose(pe);
    Enclosure out(lo_side.lo(), hi_side.hi());
    assert(out.width_within(p));
    return {out, M};
}

Stream series_stream(const SeriesSpec& spec) {
    return Stream([spec](long p) { return eval_series(spec, p).value; },
                  "series");
}

}  // namespace hmlab
