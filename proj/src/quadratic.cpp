#include "hmlab/quadratic.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

#include "hmlab/errors.hpp"

namespace hmlab {

mpz_class squarefree_part(const mpz_class& d, mpz_class& s) {
    s = 1;
    mpz_class rest = d;
    mpz_class f = 2;
    // Trial division is plenty: radicands in this code are small.
    while (f * f <= rest) {
        if (f > 1000000)
            throw ValueError("radicand too large to canonicalize");
        mpz_class sq = f * f;
        while (mpz_divisible_p(rest.get_mpz_t(), sq.get_mpz_t())) {
            rest /= sq;
            s *= f;
        }
        f += (f == 2) ? 1 : 2;
    }
    return rest;
}

Quadratic::Quadratic(mpq_class a, mpq_class b, mpz_class d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ < 0) throw ValueError("negative radicand in quadratic element");
    if (b_ != 0) {
        mpz_class s;
        mpz_class d0 = squarefree_part(d_, s);
        if (d0 == 1) {
            // sqrt(d) is rational: fold it away.
            a_ += b_ * s;
            b_ = 0;
        } else if (s != 1) {
            b_ *= s;
            d_ = d0;
        } else {
            d_ = d0;
        }
    }
    canon();
}

void Quadratic::canon() {
    if (b_ == 0) d_ = 0;
    if (d_ == 0) b_ = 0;
}

const mpq_class& Quadratic::rat() const {
    if (b_ != 0) throw UnsupportedField("irrational element used as a rational");
    return a_;
}

mpz_class Quadratic::merged_d(const Quadratic& o) const {
    if (b_ == 0) return o.d_;
    if (o.b_ == 0) return d_;
    if (d_ != o.d_)
        throw UnsupportedField("mixed radicands in quadratic arithmetic");
    return d_;
}

Quadratic Quadratic::operator+(const Quadratic& o) const {
    return Quadratic(a_ + o.a_, b_ + o.b_, merged_d(o));
}

Quadratic Quadratic::operator-(const Quadratic& o) const {
    return Quadratic(a_ - o.a_, b_ - o.b_, merged_d(o));
}

Quadratic Quadratic::operator*(const Quadratic& o) const {
    mpz_class d = merged_d(o);
    return Quadratic(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

Quadratic Quadratic::inverse() const {
    mpq_class n = norm();
    if (n == 0) throw std::domain_error("inverse of zero quadratic element");
    return Quadratic(a_ / n, -b_ / n, d_);
}

Quadratic Quadratic::operator/(const Quadratic& o) const {
    return *this * o.inverse();
}

Quadratic Quadratic::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Quadratic acc(1), base = *this;
    unsigned long e = static_cast<unsigned long>(k);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

int Quadratic::sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs |b|sqrt(d) decides, and a^2 = b^2 d cannot
    // happen for squarefree d > 1.
    mpq_class lhs = a_ * a_, rhs = b_ * b_ * d_;
    assert(lhs != rhs);
    return lhs > rhs ? sa : sb;
}

bool Quadratic::operator==(const Quadratic& o) const {
    return a_ == o.a_ && b_ == o.b_ && d_ == o.d_;
}

mpz_class Quadratic::floor() const {
    if (b_ == 0) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a_.get_num().get_mpz_t(),
                   a_.get_den().get_mpz_t());
        return q;
    }
    for (long p = 16;; p *= 2) {
        Enclosure e = enclose(p);
        mpz_class lo = e.lo().floor(), hi = e.hi().floor();
        if (lo == hi) return lo;
        // An irrational value is never an integer, so the straddled
        // boundary resolves under refinement; a few doublings suffice.
        assert(p < (1L << 24));
    }
}

mpz_class Quadratic::ceil() const { return -(-*this).floor(); }

bool Quadratic::is_z_integral() const {
    return a_.get_den() == 1 && b_.get_den() == 1;
}

Enclosure Quadratic::enclose(long p) const {
    if (b_ == 0) {
        return Enclosure(Dyadic::from_mpq_down(a_, p), Dyadic::from_mpq_up(a_, p));
    }
    // Working precision absorbs |b| and the outward roundings below.
    long bits_b = static_cast<long>(mpz_sizeinbase(b_.get_num().get_mpz_t(), 2));
    long P = p + bits_b + 4;
    Enclosure root = Enclosure::point(Dyadic(mpz_class(d_), 0)).sqrt_out(P);
    mpq_class lo_q, hi_q;
    if (b_ >= 0) {
        lo_q = a_ + b_ * root.lo().to_mpq();
        hi_q = a_ + b_ * root.hi().to_mpq();
    } else {
        lo_q = a_ + b_ * root.hi().to_mpq();
        hi_q = a_ + b_ * root.lo().to_mpq();
    }
    return Enclosure(Dyadic::from_mpq_down(lo_q, P), Dyadic::from_mpq_up(hi_q, P));
}

double Quadratic::to_double() const {
    return enclose(64).mid().to_double();
}

std::string Quadratic::str() const {
    if (b_ == 0) return a_.get_str();
    std::string s = "(" + a_.get_str();
    s += (b_ > 0) ? " + " : " - ";
    mpq_class ab = ::abs(b_);
    if (ab != 1) s += ab.get_str() + "*";
    s += "sqrt(" + d_.get_str() + "))";
    return s;
}

}  // namespace hmlab
