#include "hmlab/scalar.hpp"

#include <cctype>

#include "hmlab/errors.hpp"

namespace hmlab {

Stream::Stream(Gen gen, std::string label)
    : gen_(std::move(gen)), label_(std::move(label)),
      state_(std::make_shared<State>()) {}

Enclosure Stream::at(long p) const {
    Enclosure e = gen_(p);
    std::lock_guard<std::mutex> lock(state_->mu);
    if (state_->tightest) e = e.intersect(*state_->tightest);
    state_->tightest = e;
    return e;
}

ScalarKind RealScalar::kind() const {
    if (auto* q = std::get_if<Quadratic>(&v_))
        return q->is_rational() ? ScalarKind::rational : ScalarKind::quadratic;
    return ScalarKind::stream;
}

const Quadratic& RealScalar::field_value() const {
    if (auto* q = std::get_if<Quadratic>(&v_)) return *q;
    throw UnsupportedField("enclosure stream has no exact field value");
}

const Stream& RealScalar::stream() const {
    return std::get<Stream>(v_);
}

Enclosure RealScalar::refine(long p) const {
    if (auto* q = std::get_if<Quadratic>(&v_)) return q->enclose(p);
    return std::get<Stream>(v_).at(p);
}

std::string RealScalar::str() const {
    if (auto* q = std::get_if<Quadratic>(&v_)) return q->str();
    return std::get<Stream>(v_).label();
}

// Enclosure of m*theta + alpha with width <= 2^-p.
static Enclosure linear_enclosure(const mpz_class& m, const RealScalar& theta,
                                  const RealScalar& alpha, long p) {
    long bits_m = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
    long wp = p + bits_m + 2;
    return theta.refine(wp).scale(Dyadic(m, 0)) + alpha.refine(wp);
}

mpz_class floor_linear(const mpz_class& m, const RealScalar& theta,
                       const RealScalar& alpha, long p_max) {
    if (theta.exact() && alpha.exact()) {
        try {
            Quadratic v =
                theta.field_value() * Quadratic(mpq_class(m)) + alpha.field_value();
            return v.floor();
        } catch (const UnsupportedField&) {
            // Mixed radicands: no common field, fall through to refinement.
        }
    }
    long p = 32;
    while (true) {
        Enclosure e = linear_enclosure(m, theta, alpha, p);
        mpz_class lo = e.lo().floor(), hi = e.hi().floor();
        if (lo == hi) return lo;
        if (p >= p_max)
            throw PrecisionExhausted("floor of " + m.get_str() +
                                     "*theta+alpha undecided at " +
                                     std::to_string(p_max) + " bits");
        p = std::min(2 * p, p_max);
    }
}

Ordering frac_condition(const mpz_class& m, const RealScalar& theta,
                        const RealScalar& alpha, const RealScalar& t,
                        long p_max) {
    if (theta.exact() && alpha.exact() && t.exact()) {
        try {
            Quadratic s = theta.field_value() * Quadratic(mpq_class(m)) +
                          alpha.field_value();
            Quadratic sum = s.frac() + t.field_value().frac();
            int c = sum.cmp(Quadratic(1));
            if (c < 0) return Ordering::Less;
            if (c > 0) return Ordering::Greater;
            return Ordering::Undecided;
        } catch (const UnsupportedField&) {
        }
    }
    mpz_class f1, f2;
    try {
        f1 = floor_linear(m, theta, alpha, p_max);
        f2 = floor_linear(1, t, RealScalar(0), p_max);
    } catch (const PrecisionExhausted&) {
        return Ordering::Undecided;
    }
    Dyadic shift(-(f1 + f2), 0);
    long p = 32;
    while (true) {
        Enclosure e = linear_enclosure(m, theta, alpha, p) + t.refine(p) +
                      Enclosure::point(shift);
        if (e.hi() < Dyadic(1)) return Ordering::Less;
        if (e.lo() > Dyadic(1)) return Ordering::Greater;
        if (p >= p_max) return Ordering::Undecided;
        p = std::min(2 * p, p_max);
    }
}

static bool plain_integer(const std::string& s) {
    std::size_t i = (s.size() > 0 && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

static mpz_class parse_int(const std::string& s) {
    if (!plain_integer(s)) throw ValueError("malformed integer '" + s + "'");
    return mpz_class(s);
}

mpq_class parse_rational(const std::string& text) {
    auto slash = text.find('/');
    mpz_class num, den = 1;
    if (slash == std::string::npos) {
        num = parse_int(text);
    } else {
        num = parse_int(text.substr(0, slash));
        den = parse_int(text.substr(slash + 1));
        if (den == 0) throw ValueError("zero denominator in '" + text + "'");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

static mpq_class parse_decimal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    auto dot = s.find('.');
    std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (ip.empty() && fp.empty())
        throw ValueError("malformed decimal '" + text + "'");
    for (char c : ip + fp)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ValueError("malformed decimal '" + text + "'");
    mpz_class num(ip.empty() ? "0" : ip);
    for (char c : fp) num = num * 10 + (c - '0');
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    mpq_class q(neg ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
}

Quadratic parse_field(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ValueError("scalar literal needs a rat:/quad:/dec: prefix, got '" +
                         text + "'");
    std::string tag = text.substr(0, colon), body = text.substr(colon + 1);
    if (tag == "rat") return Quadratic(parse_rational(body));
    if (tag == "dec") return Quadratic(parse_decimal(body));
    if (tag == "quad") {
        auto c1 = body.find(',');
        auto c2 = c1 == std::string::npos ? c1 : body.find(',', c1 + 1);
        if (c2 == std::string::npos)
            throw ValueError("quad literal needs a,b,d, got '" + text + "'");
        mpq_class a = parse_rational(body.substr(0, c1));
        mpq_class b = parse_rational(body.substr(c1 + 1, c2 - c1 - 1));
        mpz_class d = parse_int(body.substr(c2 + 1));
        if (d < 0) throw ValueError("negative radicand in '" + text + "'");
        return Quadratic(a, b, d);
    }
    throw ValueError("unknown scalar prefix '" + tag + "'");
}

RealScalar parse_scalar(const std::string& text) {
    return RealScalar(parse_field(text));
}

}  // namespace hmlab
