#include "hmlab/polynomial.hpp"

#include <sstream>
#include <stdexcept>

#include "hmlab/errors.hpp"

namespace hmlab {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs)
    : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

unsigned IntPolynomial::degree() const {
    return coeffs_.empty() ? 0 : static_cast<unsigned>(coeffs_.size() - 1);
}

const mpz_class& IntPolynomial::lead() const {
    if (coeffs_.empty()) throw ValueError("zero polynomial has no lead");
    return coeffs_.back();
}

const mpz_class& IntPolynomial::coeff(unsigned i) const {
    static const mpz_class zero(0);
    return i < coeffs_.size() ? coeffs_[i] : zero;
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
    mpz_class acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

mpz_class IntPolynomial::abs_coeff_sum() const {
    mpz_class s(0);
    for (const auto& c : coeffs_) s += abs(c);
    return s;
}

std::string IntPolynomial::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        mpz_class c = coeffs_[i];
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        mpz_class a = abs(c);
        if (a != 1 || i == 0) out << a.get_str();
        if (i >= 1) out << "x";
        if (i >= 2) out << "^" << i;
        first = false;
    }
    return out.str();
}

IntPolynomial parse_poly(const std::string& text) {
    std::vector<mpz_class> coeffs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string piece =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (piece.empty())
            throw ValueError("empty coefficient in poly literal '" + text + "'");
        std::size_t i = piece[0] == '-' ? 1 : 0;
        if (i == piece.size())
            throw ValueError("malformed coefficient '" + piece + "'");
        for (; i < piece.size(); ++i)
            if (piece[i] < '0' || piece[i] > '9')
                throw ValueError("malformed coefficient '" + piece + "'");
        coeffs.emplace_back(piece);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return IntPolynomial(std::move(coeffs));
}

std::vector<mpz_class> binom_weights(unsigned sigma) {
    if (sigma < 1) throw ValueError("difference order must be >= 1");
    std::vector<mpz_class> b(sigma + 1);
    for (unsigned k = 0; k <= sigma; ++k) {
        mpz_bin_uiui(b[k].get_mpz_t(), sigma, k);
        if (k % 2 == 1) b[k] = -b[k];
    }
    return b;
}

void BivariatePolynomial::add_term(unsigned i, unsigned j, const mpz_class& c) {
    if (c == 0) return;
    auto key = std::make_pair(i, j);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

mpz_class BivariatePolynomial::coeff(unsigned i, unsigned j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? mpz_class(0) : it->second;
}

BivariatePolynomial BivariatePolynomial::operator+(
    const BivariatePolynomial& o) const {
    BivariatePolynomial r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
    return r;
}

BivariatePolynomial BivariatePolynomial::operator-(
    const BivariatePolynomial& o) const {
    BivariatePolynomial r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
    return r;
}

BivariatePolynomial BivariatePolynomial::operator*(
    const BivariatePolynomial& o) const {
    BivariatePolynomial r;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_)
            r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
    return r;
}

mpz_class BivariatePolynomial::eval(const mpz_class& x,
                                    const mpz_class& y) const {
    mpz_class acc(0);
    for (const auto& [k, c] : terms_) {
        mpz_class xp, yp;
        mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(), k.first);
        mpz_pow_ui(yp.get_mpz_t(), y.get_mpz_t(), k.second);
        acc += c * xp * yp;
    }
    return acc;
}

std::string BivariatePolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Highest x-power first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        mpz_class a = abs(c);
        bool bare = k.first == 0 && k.second == 0;
        if (a != 1 || bare) out << a.get_str();
        if (k.first >= 1) out << "x";
        if (k.first >= 2) out << "^" << k.first;
        if (k.second >= 1) out << "y";
        if (k.second >= 2) out << "^" << k.second;
        first = false;
    }
    return out.str();
}

BivariatePolynomial BivariatePolynomial::shifted(const IntPolynomial& f,
                                                 long c, long k) {
    // Powers of u = x + c + k*y by repeated multiplication; degrees here
    // are single digits, so no cleverness is needed.
    BivariatePolynomial u;
    u.add_term(1, 0, 1);
    u.add_term(0, 0, mpz_class(c));
    u.add_term(0, 1, mpz_class(k));
    BivariatePolynomial acc, upow;
    upow.add_term(0, 0, 1);
    for (unsigned j = 0; j < f.coeffs().size(); ++j) {
        if (j > 0) upow = upow * u;
        for (const auto& [key, uc] : upow.terms())
            acc.add_term(key.first, key.second, uc * f.coeff(j));
    }
    return acc;
}

BoundaryPoly p_construct(const IntPolynomial& f, unsigned sigma, unsigned ell,
                         bool step_up) {
    if (f.is_zero() || f.degree() < 1)
        throw ValueError("boundary polynomial needs a non-constant f");
    if (sigma != f.degree() + 1)
        throw ValueError("boundary polynomial assumes sigma = deg(f)+1");
    if (ell > sigma - 1)
        throw ValueError("boundary index out of range");
    std::vector<mpz_class> b = binom_weights(sigma);
    long step = step_up ? -1 : 1;
    BivariatePolynomial p;
    for (unsigned k = 0; k <= ell; ++k) {
        BivariatePolynomial diff =
            BivariatePolynomial::shifted(f, 0, static_cast<long>(k)) -
            BivariatePolynomial::shifted(f, step, static_cast<long>(k));
        for (const auto& [key, c] : diff.terms())
            p.add_term(key.first, key.second, c * b[k]);
    }

    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), sigma - 1, ell);
    mpz_class expect = f.lead() * (1 - static_cast<long>(sigma)) * binom;
    if (ell % 2 == 1) expect = -expect;
    if (step_up) expect = -expect;
    // The x^{sigma-2} coefficient must be y-free and match the closed form.
    for (const auto& [key, c] : p.terms()) {
        if (key.first == sigma - 2 && key.second != 0)
            throw std::logic_error("boundary polynomial lead is not y-free");
        if (key.first > sigma - 2)
            throw std::logic_error("boundary polynomial degree too high");
    }
    if (p.coeff(sigma - 2, 0) != expect)
        throw std::logic_error("boundary polynomial lead mismatch");
    return BoundaryPoly{std::move(p), std::move(expect), ell, step_up};
}

BivariatePolynomial poly_diff_power(const IntPolynomial& f, unsigned sigma) {
    if (f.is_zero()) throw ValueError("difference power of zero polynomial");
    if (sigma < f.degree() + 1)
        throw ValueError("difference order must exceed the degree");
    std::vector<mpz_class> b = binom_weights(sigma);
    BivariatePolynomial acc;
    for (unsigned k = 0; k <= sigma; ++k) {
        BivariatePolynomial t =
            BivariatePolynomial::shifted(f, 0, static_cast<long>(k));
        for (const auto& [key, c] : t.terms())
            acc.add_term(key.first, key.second, c * b[k]);
    }
    if (!acc.is_zero())
        throw std::logic_error("difference power failed to annihilate");
    return acc;
}

}  // namespace hmlab
