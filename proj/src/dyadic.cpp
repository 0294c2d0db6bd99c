#include "hmlab/dyadic.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hmlab {

void Dyadic::normalize() {
    if (man_ == 0) {
        exp_ = 0;
        return;
    }
    unsigned long tz = mpz_scan1(man_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
        exp_ += static_cast<long>(tz);
    }
}

// Align both operands to the smaller exponent, then work on integers.
static std::pair<mpz_class, mpz_class> aligned(const Dyadic& a, const Dyadic& b,
                                               long& e) {
    e = std::min(a.exp(), b.exp());
    mpz_class ma = a.man(), mb = b.man();
    if (a.exp() > e)
        mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), a.exp() - e);
    if (b.exp() > e)
        mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), b.exp() - e);
    return {std::move(ma), std::move(mb)};
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long e;
    auto [ma, mb] = aligned(*this, o, e);
    return Dyadic(ma + mb, e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return -o;
    long e;
    auto [ma, mb] = aligned(*this, o, e);
    return Dyadic(ma - mb, e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
    if (is_zero() || o.is_zero()) return Dyadic();
    return Dyadic(man_ * o.man_, exp_ + o.exp_);
}

int Dyadic::cmp(const Dyadic& o) const {
    int sa = sign(), sb = o.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    long e;
    auto [ma, mb] = aligned(*this, o, e);
    return ::cmp(ma, mb);
}

mpz_class Dyadic::floor() const {
    mpz_class r = man_;
    if (exp_ >= 0) {
        mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), exp_);
    } else {
        mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), -exp_);
    }
    return r;
}

mpz_class Dyadic::ceil() const {
    mpz_class r = man_;
    if (exp_ >= 0) {
        mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), exp_);
    } else {
        mpz_cdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), -exp_);
    }
    return r;
}

Dyadic Dyadic::round_down(long p) const {
    if (exp_ >= -p) return *this;
    mpz_class m = man_;
    mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), -p - exp_);
    return Dyadic(std::move(m), -p);
}

Dyadic Dyadic::round_up(long p) const {
    if (exp_ >= -p) return *this;
    mpz_class m = man_;
    mpz_cdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), -p - exp_);
    return Dyadic(std::move(m), -p);
}

mpq_class Dyadic::to_mpq() const {
    mpq_class q(man_);
    if (exp_ >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), exp_);
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), -exp_);
    }
    return q;
}

double Dyadic::to_double() const { return to_mpq().get_d(); }

std::string Dyadic::str() const {
    if (exp_ >= 0) {
        mpz_class v = man_;
        mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), exp_);
        return v.get_str();
    }
    // man / 2^k == man * 5^k / 10^k: shift the decimal point k places.
    unsigned long k = static_cast<unsigned long>(-exp_);
    mpz_class five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5, k);
    mpz_class scaled = man_ * five;
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits = scaled.get_str();
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    digits.insert(digits.size() - k, ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return neg ? "-" + digits : digits;
}

Dyadic Dyadic::from_mpq_down(const mpq_class& q, long p) {
    // floor(q * 2^p) / 2^p
    mpz_class num = q.get_num();
    if (p >= 0) {
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), p);
    }
    mpz_class m;
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    if (p < 0) {
        mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), -p);
        return Dyadic(std::move(m), 0);
    }
    return Dyadic(std::move(m), -p);
}

Dyadic Dyadic::from_mpq_up(const mpq_class& q, long p) {
    mpq_class neg = -q;
    return -from_mpq_down(neg, p);
}

Dyadic Dyadic::sqrt_down(long p) const {
    if (sign() < 0) throw std::domain_error("sqrt of negative dyadic");
    if (is_zero()) return Dyadic();
    // floor(sqrt(v) * 2^p) = isqrt(floor(v * 4^p)): v * 4^p = man * 2^(exp+2p).
    long shift = exp_ + 2 * p;
    mpz_class m = man_;
    if (shift >= 0) {
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), shift);
    } else {
        mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), -shift);
    }
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    return Dyadic(std::move(r), -p);
}

Dyadic Dyadic::sqrt_up(long p) const {
    if (sign() < 0) throw std::domain_error("sqrt of negative dyadic");
    if (is_zero()) return Dyadic();
    long shift = exp_ + 2 * p;
    mpz_class m = man_;
    if (shift >= 0) {
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), shift);
    } else {
        mpz_cdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), -shift);
    }
    mpz_class r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
    if (rem != 0) r += 1;
    return Dyadic(std::move(r), -p);
}

Enclosure::Enclosure(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw std::invalid_argument("enclosure endpoints out of order");
}

Enclosure Enclosure::intersect(const Enclosure& o) const {
    Dyadic l = lo_ > o.lo_ ? lo_ : o.lo_;
    Dyadic h = hi_ < o.hi_ ? hi_ : o.hi_;
    if (l > h) throw std::invalid_argument("empty enclosure intersection");
    return Enclosure(std::move(l), std::move(h));
}

Enclosure Enclosure::operator*(const Enclosure& o) const {
    Dyadic c[4] = {lo_ * o.lo_, lo_ * o.hi_, hi_ * o.lo_, hi_ * o.hi_};
    Dyadic l = c[0], h = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < l) l = c[i];
        if (c[i] > h) h = c[i];
    }
    return Enclosure(std::move(l), std::move(h));
}

Enclosure Enclosure::scale(const Dyadic& c) const {
    if (c.sign() >= 0) return Enclosure(lo_ * c, hi_ * c);
    return Enclosure(hi_ * c, lo_ * c);
}

Enclosure Enclosure::abs() const {
    if (lo_.sign() >= 0) return *this;
    if (hi_.sign() <= 0) return Enclosure(-hi_, -lo_);
    Dyadic h = -lo_ > hi_ ? -lo_ : hi_;
    return Enclosure(Dyadic(), std::move(h));
}

static Dyadic dyadic_pow(const Dyadic& v, unsigned long k) {
    if (k == 0) return Dyadic(1);
    mpz_class m;
    mpz_pow_ui(m.get_mpz_t(), v.man().get_mpz_t(), k);
    return Dyadic(std::move(m), v.exp() * static_cast<long>(k));
}

Enclosure Enclosure::pow(unsigned long k) const {
    if (k == 0) return Enclosure::point(Dyadic(1));
    if (k % 2 == 1 || lo_.sign() >= 0)
        return Enclosure(dyadic_pow(lo_, k), dyadic_pow(hi_, k));
    if (hi_.sign() <= 0)
        return Enclosure(dyadic_pow(hi_, k), dyadic_pow(lo_, k));
    // Even power of an interval straddling zero.
    Dyadic a = -lo_, b = hi_;
    return Enclosure(Dyadic(), dyadic_pow(a > b ? a : b, k));
}

Enclosure Enclosure::sqrt_out(long p) const {
    return Enclosure(lo_.sqrt_down(p), hi_.sqrt_up(p));
}

bool Enclosure::width_within(long p) const {
    Dyadic w = width();
    // w <= 2^-p iff w * 2^p <= 1.
    return w.mul_pow2(p) <= Dyadic(1);
}

double approx_log2(const Dyadic& x) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    long e;
    double d = mpz_get_d_2exp(&e, x.man().get_mpz_t());
    return std::log2(std::fabs(d)) + static_cast<double>(e) +
           static_cast<double>(x.exp());
}

double approx_log2(const Enclosure& x) {
    Dyadic a = x.lo().abs(), b = x.hi().abs();
    return approx_log2(a > b ? a : b);
}

}  // namespace hmlab
