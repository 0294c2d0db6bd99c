#pragma once

#include <gmpxx.h>

#include <string>

#include "hmlab/dyadic.hpp"

namespace hmlab {

// Element a + b*sqrt(d) of a real quadratic field (or of Q when b = 0).
// Canonical form: d is squarefree and > 1 whenever b != 0, and d = 0 when
// b = 0, so rationals from different sources mix freely.  All comparisons
// are exact; no floating point is involved anywhere.
class Quadratic {
  public:
    Quadratic() : a_(0), b_(0), d_(0) {}
    Quadratic(long v) : a_(v), b_(0), d_(0) {}
    Quadratic(mpq_class a) : a_(std::move(a)), b_(0), d_(0) { canon(); }
    Quadratic(mpq_class a, mpq_class b, mpz_class d);

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    const mpz_class& d() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    // The rational value; only valid when is_rational().
    const mpq_class& rat() const;

    Quadratic operator-() const { return Quadratic(-a_, -b_, d_); }
    Quadratic operator+(const Quadratic& o) const;
    Quadratic operator-(const Quadratic& o) const;
    Quadratic operator*(const Quadratic& o) const;
    Quadratic operator/(const Quadratic& o) const;
    Quadratic inverse() const;
    Quadratic conj() const { return Quadratic(a_, -b_, d_); }
    mpq_class norm() const { return a_ * a_ - b_ * b_ * d_; }
    mpq_class trace() const { return 2 * a_; }
    Quadratic abs() const { return sign() < 0 ? -*this : *this; }
    Quadratic pow(long k) const;

    int sign() const;
    int cmp(const Quadratic& o) const { return (*this - o).sign(); }
    bool operator==(const Quadratic& o) const;
    bool operator!=(const Quadratic& o) const { return !(*this == o); }
    bool operator<(const Quadratic& o) const { return cmp(o) < 0; }
    bool operator<=(const Quadratic& o) const { return cmp(o) <= 0; }
    bool operator>(const Quadratic& o) const { return cmp(o) > 0; }
    bool operator>=(const Quadratic& o) const { return cmp(o) >= 0; }

    mpz_class floor() const;
    mpz_class ceil() const;
    // Fractional part, as an exact element of the same field.
    Quadratic frac() const { return *this - Quadratic(mpq_class(floor())); }

    // Both coordinates integral, i.e. the element lies in Z[sqrt(d)].
    bool is_z_integral() const;

    // Interval of width <= 2^-p around the exact value.
    Enclosure enclose(long p) const;
    double to_double() const;
    std::string str() const;

  private:
    void canon();
    // Shared field check for binary operations; returns the common d.
    mpz_class merged_d(const Quadratic& o) const;
    mpq_class a_, b_;
    mpz_class d_;
};

// Strips square factors: d = s^2 * d0 with d0 squarefree; returns d0 and
// stores the extracted s.
mpz_class squarefree_part(const mpz_class& d, mpz_class& s);

}  // namespace hmlab
