#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hmlab/quadratic.hpp"

namespace hmlab {

enum class PrimeSplitting { Rational, Split, Inert, Ramified };

// One non-archimedean place.  Split primes carry a prime element pi with
// |N(pi)| = p; the two places over p are distinguished by conj_index
// (0 for pi, 1 for its conjugate).
struct FinitePlace {
    mpz_class p;
    PrimeSplitting splitting;
    std::optional<Quadratic> pi;
    int conj_index = 0;
    mpz_class residue_norm;  // N(p-ideal): p, or p^2 when inert
    long ord_beta = 0;
};

// QQ (d = 0) or a real quadratic field QQ(sqrt(d)) from the class-number-1
// whitelist with d = 2,3 mod 4, so the ring of integers is Z[sqrt(d)] and
// integrality is a per-coordinate condition.
class QuadField {
  public:
    explicit QuadField(mpz_class d);

    const mpz_class& d() const { return d_; }
    unsigned degree() const { return d_ == 0 ? 1 : 2; }
    bool contains(const Quadratic& x) const {
        return x.is_rational() || x.d() == d_;
    }

    std::vector<FinitePlace> places_over(const mpz_class& p) const;
    long ord_at(const FinitePlace& pl, const Quadratic& x) const;
    // |x|_v^degree, exact: residue_norm^(-ord).
    mpq_class abs_pow(const FinitePlace& pl, const Quadratic& x) const;
    // ord >= 0 at every place that lies outside S.
    bool s_integral(const std::vector<FinitePlace>& S,
                    const Quadratic& x) const;

  private:
    mpz_class d_;
};

struct PlaceSet {
    QuadField field;
    Quadratic beta;
    std::vector<FinitePlace> finite;  // exactly the places with ord(beta) != 0
    mpq_class kappa;                  // rational >= 2, >= every |beta|_v on S

    unsigned arch_count() const { return field.degree(); }
    std::size_t size() const { return finite.size() + arch_count(); }
};

// S = all archimedean places plus the finite places where beta has nonzero
// order, with kappa as a certified rational cap on |beta|_v.
PlaceSet build_places(const Quadratic& beta);

// Trial-division factorization; UnsupportedField when a cofactor survives
// the small-prime bound.
std::map<mpz_class, unsigned> factor_small(mpz_class n);

// ord_p of a rational, as ord(num) - ord(den).
long ord_p_rational(const mpq_class& x, const mpz_class& p);

// Exact check of prod_v |x|_v = 1 over the full place set of x's field.
bool verify_product_formula(const QuadField& field, const Quadratic& x);

// H(point)^degree, kept exact; H itself is generally irrational.
struct HeightValue {
    Quadratic hpow;
    unsigned deg;
    Enclosure enclose(long p) const;
    double to_double() const;
};

// Projective Weil height from the place-product definition; coordinates
// must share one supported field and factoring must stay small.
HeightValue height(const std::vector<Quadratic>& point);

// Same height, but using only places in S.  Valid when every coordinate is
// an S-integer and some coordinate equals 1, which pins max_v = 1 off S.
HeightValue height_over(const PlaceSet& S, const std::vector<Quadratic>& point);

mpq_class mpq_pow_si(const mpq_class& base, long e);

}  // namespace hmlab
