#pragma once

#include <gmpxx.h>

#include <string>

namespace hmlab {

// Arbitrary-precision dyadic number man * 2^exp.  Canonical form keeps man
// odd (or zero with exp = 0), so equality is representation equality.
class Dyadic {
  public:
    Dyadic() : man_(0), exp_(0) {}
    Dyadic(long v) : man_(v), exp_(0) { normalize(); }
    Dyadic(mpz_class man, long exp) : man_(std::move(man)), exp_(exp) {
        normalize();
    }

    const mpz_class& man() const { return man_; }
    long exp() const { return exp_; }

    int sign() const { return sgn(man_); }
    bool is_zero() const { return man_ == 0; }

    Dyadic operator-() const { return Dyadic(-man_, exp_); }
    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator*(const Dyadic& o) const;
    Dyadic mul_pow2(long k) const { return is_zero() ? Dyadic() : Dyadic(man_, exp_ + k); }
    Dyadic abs() const { return man_ < 0 ? -*this : *this; }

    int cmp(const Dyadic& o) const;
    bool operator==(const Dyadic& o) const { return man_ == o.man_ && exp_ == o.exp_; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const { return cmp(o) < 0; }
    bool operator<=(const Dyadic& o) const { return cmp(o) <= 0; }
    bool operator>(const Dyadic& o) const { return cmp(o) > 0; }
    bool operator>=(const Dyadic& o) const { return cmp(o) >= 0; }

    mpz_class floor() const;
    mpz_class ceil() const;

    // Nearest multiple of 2^-p, rounding toward -inf / +inf.
    Dyadic round_down(long p) const;
    Dyadic round_up(long p) const;

    mpq_class to_mpq() const;
    double to_double() const;
    // Exact decimal representation (dyadics always have one).
    std::string str() const;

    static Dyadic from_mpq_down(const mpq_class& q, long p);
    static Dyadic from_mpq_up(const mpq_class& q, long p);
    // floor(sqrt(v)) / ceil(sqrt(v)) on the grid 2^-p; v must be >= 0.
    Dyadic sqrt_down(long p) const;
    Dyadic sqrt_up(long p) const;

  private:
    void normalize();
    mpz_class man_;
    long exp_;
};

// Closed interval [lo, hi] with dyadic endpoints.
class Enclosure {
  public:
    Enclosure() = default;
    Enclosure(Dyadic lo, Dyadic hi);
    static Enclosure point(Dyadic v) { return Enclosure(v, v); }

    const Dyadic& lo() const { return lo_; }
    const Dyadic& hi() const { return hi_; }
    Dyadic width() const { return hi_ - lo_; }
    Dyadic mid() const { return (lo_ + hi_).mul_pow2(-1); }

    bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const Enclosure& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool intersects(const Enclosure& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    Enclosure intersect(const Enclosure& o) const;

    Enclosure operator+(const Enclosure& o) const { return Enclosure(lo_ + o.lo_, hi_ + o.hi_); }
    Enclosure operator-(const Enclosure& o) const { return Enclosure(lo_ - o.hi_, hi_ - o.lo_); }
    Enclosure operator-() const { return Enclosure(-hi_, -lo_); }
    Enclosure operator*(const Enclosure& o) const;
    Enclosure scale(const Dyadic& c) const;
    // [|x|] over the interval.
    Enclosure abs() const;
    // x^k, k >= 0, by interval powering.
    Enclosure pow(unsigned long k) const;

    // Push endpoints outward to the grid 2^-p.
    Enclosure round_out(long p) const { return Enclosure(lo_.round_down(p), hi_.round_up(p)); }
    // Enclosure of sqrt(x) at grid 2^-p; requires lo >= 0.
    Enclosure sqrt_out(long p) const;

    // True iff width <= 2^-p.
    bool width_within(long p) const;

    std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

  private:
    Dyadic lo_, hi_;
};

// log2(|x|) as a double, usable far outside the double exponent range;
// -inf for zero.  Report-grade accuracy only.
double approx_log2(const Dyadic& x);
// log2 of the largest magnitude in the interval.
double approx_log2(const Enclosure& x);

}  // namespace hmlab
