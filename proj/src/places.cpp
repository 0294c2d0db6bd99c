#include "hmlab/places.hpp"

#include <algorithm>
#include <cmath>

#include "hmlab/errors.hpp"

namespace hmlab {

namespace {

// Real quadratic fields with class number 1 and d = 2,3 mod 4.  Restricting
// to these keeps every ideal principal and the integer ring equal to
// Z[sqrt(d)], which the ord computations below rely on.
constexpr long kFieldWhitelist[] = {2, 3, 6, 7, 11, 14, 19, 22, 23};

bool whitelisted(const mpz_class& d) {
    for (long w : kFieldWhitelist) {
        if (d == w) return true;
    }
    return false;
}

// Largest k with p^k | n, for n != 0.
long ord_p_int(const mpz_class& n, const mpz_class& p) {
    if (n == 0) throw ValueError("ord of zero is undefined");
    mpz_class reduced;
    return static_cast<long>(
        mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

bool p_integral(const mpq_class& x, const mpz_class& p) {
    if (x == 0) return true;
    return ord_p_rational(x, p) >= 0;
}

bool p_integral(const Quadratic& x, const mpz_class& p) {
    return p_integral(x.a(), p) && p_integral(x.b(), p);
}

// Prime element over a split prime: solve a^2 - d b^2 = +-p with the
// smallest b, which makes the choice reproducible.
Quadratic split_prime_element(const mpz_class& d, const mpz_class& p) {
    for (mpz_class b = 1; b < 20000; ++b) {
        mpz_class db2 = d * b * b;
        for (int sgn : {1, -1}) {
            mpz_class t = db2 + sgn * p;
            if (t < 0) continue;
            if (mpz_perfect_square_p(t.get_mpz_t())) {
                mpz_class a = sqrt(t);
                return Quadratic(mpq_class(a), mpq_class(b), d);
            }
        }
    }
    throw UnsupportedField("no small prime element above a split prime");
}

}  // namespace

mpq_class mpq_pow_si(const mpq_class& base, long e) {
    if (e == 0) return 1;
    if (base == 0) throw ValueError("zero base with nonpositive exponent");
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpq_class r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), k);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), k);
    if (e < 0) r = 1 / r;
    return r;
}

long ord_p_rational(const mpq_class& x, const mpz_class& p) {
    if (x == 0) throw ValueError("ord of zero is undefined");
    long v = 0;
    if (x.get_num() != 0) v += ord_p_int(x.get_num(), p);
    v -= ord_p_int(x.get_den(), p);
    return v;
}

QuadField::QuadField(mpz_class d) : d_(std::move(d)) {
    if (d_ != 0 && !whitelisted(d_)) {
        throw UnsupportedField("field discriminant outside the supported list");
    }
}

std::vector<FinitePlace> QuadField::places_over(const mpz_class& p) const {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0) {
        throw ValueError("places_over needs a prime");
    }
    std::vector<FinitePlace> out;
    if (d_ == 0) {
        out.push_back({p, PrimeSplitting::Rational, std::nullopt, 0, p, 0});
        return out;
    }
    bool ramified = (p == 2) || mpz_divisible_p(d_.get_mpz_t(), p.get_mpz_t());
    if (ramified) {
        out.push_back({p, PrimeSplitting::Ramified, std::nullopt, 0, p, 0});
        return out;
    }
    int leg = mpz_legendre(d_.get_mpz_t(), p.get_mpz_t());
    if (leg == 1) {
        Quadratic pi = split_prime_element(d_, p);
        out.push_back({p, PrimeSplitting::Split, pi, 0, p, 0});
        out.push_back({p, PrimeSplitting::Split, pi.conj(), 1, p, 0});
    } else {
        out.push_back({p, PrimeSplitting::Inert, std::nullopt, 0, p * p, 0});
    }
    return out;
}

long QuadField::ord_at(const FinitePlace& pl, const Quadratic& x) const {
    if (x.is_zero()) throw ValueError("ord of zero is undefined");
    if (!contains(x)) throw UnsupportedField("element outside this field");
    switch (pl.splitting) {
        case PrimeSplitting::Rational:
            return ord_p_rational(x.rat(), pl.p);
        case PrimeSplitting::Ramified:
            return ord_p_rational(x.norm(), pl.p);
        case PrimeSplitting::Inert: {
            long v = ord_p_rational(x.norm(), pl.p);
            if (v % 2 != 0) {
                throw std::logic_error("odd norm order at an inert prime");
            }
            return v / 2;
        }
        case PrimeSplitting::Split:
            break;
    }
    // Clear the rational content first, then count how many factors of pi
    // remain: z*(conj(pi)/p)^k is p-integral exactly when ord_pi(z) >= k.
    long m0 = 0;
    if (x.a() != 0) m0 = ord_p_rational(x.a(), pl.p);
    if (x.b() != 0) {
        long vb = ord_p_rational(x.b(), pl.p);
        m0 = (x.a() == 0) ? vb : std::min(m0, vb);
    }
    Quadratic z = x * Quadratic(mpq_pow_si(mpq_class(pl.p), -m0));
    Quadratic step = pl.pi->conj() / Quadratic(mpq_class(pl.p));
    long k = 0;
    Quadratic y = z * step;
    while (p_integral(y, pl.p)) {
        ++k;
        y = y * step;
    }
    return m0 + k;
}

mpq_class QuadField::abs_pow(const FinitePlace& pl, const Quadratic& x) const {
    if (x.is_zero()) return 0;
    return mpq_pow_si(mpq_class(pl.residue_norm), -ord_at(pl, x));
}

bool QuadField::s_integral(const std::vector<FinitePlace>& S,
                           const Quadratic& x) const {
    if (x.is_zero()) return true;
    std::map<mpz_class, unsigned> dens = factor_small(x.a().get_den());
    for (auto& [p, e] : factor_small(x.b().get_den())) dens[p] += e;
    for (auto& [p, e] : dens) {
        (void)e;
        for (const FinitePlace& pl : places_over(p)) {
            bool in_s =
                std::any_of(S.begin(), S.end(), [&](const FinitePlace& q) {
                    return q.p == pl.p && q.conj_index == pl.conj_index;
                });
            if (!in_s && ord_at(pl, x) < 0) return false;
        }
    }
    return true;
}

std::map<mpz_class, unsigned> factor_small(mpz_class n) {
    if (n == 0) throw ValueError("cannot factor zero");
    if (n < 0) n = -n;
    std::map<mpz_class, unsigned> out;
    auto strip = [&](const mpz_class& p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) out[p] = e;
    };
    strip(2);
    strip(3);
    for (mpz_class p = 5; p * p <= n && p < 1000000; p += 2) strip(p);
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 32) == 0) {
            throw UnsupportedField("composite cofactor too large to factor");
        }
        out[n] += 1;
    }
    return out;
}

bool verify_product_formula(const QuadField& field, const Quadratic& x) {
    if (x.is_zero()) throw ValueError("product formula needs a nonzero element");
    // Over the rationals the field norm is the element itself, not the
    // quadratic form value a^2.
    mpq_class nrm = field.degree() == 1 ? x.rat() : x.norm();
    std::map<mpz_class, unsigned> primes = factor_small(nrm.get_num());
    for (auto& [p, e] : factor_small(nrm.get_den())) primes[p] += e;
    // Coordinate denominators can hide at primes whose norm order cancels
    // between the two conjugate places.
    for (auto& [p, e] : factor_small(x.a().get_den())) primes[p] += e;
    if (x.b() != 0) {
        for (auto& [p, e] : factor_small(x.b().get_den())) primes[p] += e;
    }
    mpq_class finite = 1;
    for (auto& [p, e] : primes) {
        (void)e;
        for (const FinitePlace& pl : field.places_over(p)) {
            finite *= field.abs_pow(pl, x);
        }
    }
    // The archimedean contribution of |x|_v^deg over all embeddings is
    // |N(x)|, so the whole product collapses to a rational identity.
    return finite * abs(nrm) == 1;
}

PlaceSet build_places(const Quadratic& beta) {
    if (beta.is_zero()) throw ValueError("beta must be nonzero");
    QuadField field(beta.d());
    if (beta.abs().cmp(Quadratic(1)) <= 0) {
        throw ValueError("need |beta| > 1 for a convergent series");
    }
    if (!verify_product_formula(field, beta)) {
        throw std::logic_error("product formula failed on beta");
    }

    mpq_class nrm = beta.norm();
    std::map<mpz_class, unsigned> primes = factor_small(nrm.get_num());
    for (auto& [p, e] : factor_small(nrm.get_den())) primes[p] += e;
    for (auto& [p, e] : factor_small(beta.a().get_den())) primes[p] += e;
    if (beta.b() != 0) {
        for (auto& [p, e] : factor_small(beta.b().get_den())) primes[p] += e;
    }

    PlaceSet S{field, beta, {}, 2};
    mpq_class max_finite = 0;  // largest finite |beta|_v^deg on S
    for (auto& [p, e] : primes) {
        (void)e;
        for (FinitePlace pl : field.places_over(p)) {
            long v = field.ord_at(pl, beta);
            if (v == 0) continue;
            pl.ord_beta = v;
            max_finite = std::max(max_finite, field.abs_pow(pl, beta));
            S.finite.push_back(std::move(pl));
        }
    }

    // kappa must dominate |beta|_v at every place of S.  Compare through
    // the degree-th powers so everything stays exact.
    Quadratic big(max_finite);
    if (field.degree() == 1) {
        if (beta.abs().cmp(big) > 0) big = beta.abs();
        S.kappa = std::max(big.rat(), mpq_class(2));
    } else {
        Quadratic b1 = beta.abs();
        Quadratic b2 = beta.conj().abs();
        Quadratic arch = (b1.cmp(b2) >= 0) ? b1 * b1 : b2 * b2;
        if (arch.cmp(big) > 0) big = arch;
        // Round an upper square root of `big` to a dyadic rational; the
        // final kappa^2 >= big comparison is exact.
        Dyadic root = big.enclose(48).hi().sqrt_up(24);
        mpq_class k = std::max(root.to_mpq(), mpq_class(2));
        while (Quadratic(k * k).cmp(big) < 0) k += mpq_class(1, 16);
        S.kappa = k;
    }
    return S;
}

Enclosure HeightValue::enclose(long p) const {
    Enclosure e = hpow.enclose(p + 8);
    if (deg == 1) return e;
    return e.sqrt_out(p);
}

double HeightValue::to_double() const {
    double h = hpow.to_double();
    return deg == 1 ? h : std::sqrt(h);
}

namespace {

// Union of small primes that can make some |x_i|_v differ from 1.
std::map<mpz_class, unsigned> height_prime_support(
    const std::vector<Quadratic>& point) {
    std::map<mpz_class, unsigned> primes;
    auto add = [&](const mpz_class& n) {
        if (n == 0 || n == 1 || n == -1) return;
        for (auto& [p, e] : factor_small(n)) primes[p] += e;
    };
    for (const Quadratic& x : point) {
        if (x.is_zero()) continue;
        mpq_class nrm = x.norm();
        add(nrm.get_num());
        add(nrm.get_den());
        add(x.a().get_den());
        add(x.b().get_den());
    }
    return primes;
}

QuadField common_field(const std::vector<Quadratic>& point) {
    mpz_class d = 0;
    for (const Quadratic& x : point) {
        if (x.is_rational()) continue;
        if (d == 0) {
            d = x.d();
        } else if (d != x.d()) {
            throw UnsupportedField("mixed radicands in one projective point");
        }
    }
    return QuadField(d);
}

Quadratic arch_factor(const QuadField& field,
                      const std::vector<Quadratic>& point) {
    Quadratic m1(0), m2(0);
    for (const Quadratic& x : point) {
        Quadratic a1 = x.abs();
        if (a1.cmp(m1) > 0) m1 = a1;
        if (field.degree() == 2) {
            Quadratic a2 = x.conj().abs();
            if (a2.cmp(m2) > 0) m2 = a2;
        }
    }
    return field.degree() == 1 ? m1 : m1 * m2;
}

}  // namespace

HeightValue height(const std::vector<Quadratic>& point) {
    if (point.empty()) throw ValueError("empty projective point");
    bool all_zero = std::all_of(point.begin(), point.end(),
                                [](const Quadratic& x) { return x.is_zero(); });
    if (all_zero) throw ValueError("projective point must be nonzero");
    QuadField field = common_field(point);

    mpq_class finite = 1;
    for (auto& [p, e] : height_prime_support(point)) {
        (void)e;
        for (const FinitePlace& pl : field.places_over(p)) {
            mpq_class m = 0;
            for (const Quadratic& x : point) {
                if (x.is_zero()) continue;
                m = std::max(m, field.abs_pow(pl, x));
            }
            finite *= m;
        }
    }
    return {Quadratic(finite) * arch_factor(field, point), field.degree()};
}

HeightValue height_over(const PlaceSet& S, const std::vector<Quadratic>& point) {
    if (point.empty()) throw ValueError("empty projective point");
    bool has_one = std::any_of(point.begin(), point.end(), [](const Quadratic& x) {
        return x.cmp(Quadratic(1)) == 0;
    });
    if (!has_one) {
        throw ValueError("S-restricted height needs a coordinate equal to 1");
    }
    for (const Quadratic& x : point) {
        if (!x.is_zero() && !S.field.s_integral(S.finite, x)) {
            throw ValueError("coordinate is not an S-integer");
        }
    }
    mpq_class finite = 1;
    for (const FinitePlace& pl : S.finite) {
        mpq_class m = 0;
        for (const Quadratic& x : point) {
            if (x.is_zero()) continue;
            m = std::max(m, S.field.abs_pow(pl, x));
        }
        finite *= m;
    }
    return {Quadratic(finite) * arch_factor(S.field, point), S.field.degree()};
}

}  // namespace hmlab
