#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hmlab {

// Dense integer polynomial, constant term first, trailing zeros trimmed.
class IntPolynomial {
  public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is reported as 0.
    unsigned degree() const;
    const mpz_class& lead() const;
    const mpz_class& coeff(unsigned i) const;
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    mpz_class eval(const mpz_class& x) const;
    // Sum of |c_i|, the constant in the tail majorant |f(v)| <= C*|v|^deg.
    mpz_class abs_coeff_sum() const;

    std::string str() const;

  private:
    std::vector<mpz_class> coeffs_;
};

// "c0,c1,..." with constant term first, as used by the CLI --poly flag.
IntPolynomial parse_poly(const std::string& text);

// b_k = (-1)^k C(sigma, k) for k = 0..sigma.
std::vector<mpz_class> binom_weights(unsigned sigma);

// Integer polynomial in x and y, sparse, no zero terms stored.
class BivariatePolynomial {
  public:
    void add_term(unsigned i, unsigned j, const mpz_class& c);
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<unsigned, unsigned>, mpz_class>& terms() const {
        return terms_;
    }
    mpz_class coeff(unsigned i, unsigned j) const;

    BivariatePolynomial operator+(const BivariatePolynomial& o) const;
    BivariatePolynomial operator-(const BivariatePolynomial& o) const;
    BivariatePolynomial operator*(const BivariatePolynomial& o) const;

    mpz_class eval(const mpz_class& x, const mpz_class& y) const;
    std::string str() const;

    // f(x + c + k*y) expanded in x and y.
    static BivariatePolynomial shifted(const IntPolynomial& f, long c, long k);

  private:
    std::map<std::pair<unsigned, unsigned>, mpz_class> terms_;
};

struct BoundaryPoly {
    BivariatePolynomial p;
    // Coefficient of x^{sigma-2}: y-free, equal to
    // lead(f)*(1-sigma)*(-1)^l*C(sigma-1,l) for the downward step and the
    // negation of that for the upward step.
    mpz_class x_lead;
    unsigned ell;
    bool step_up;
};

// The polynomial whose values give w_{n,m} on boundary positions:
// sum_{k=0}^{l} b_k (f(x+ky) - f(x+1+ky)) for the downward step,
// sum_{k=0}^{l} b_k (f(x+ky) - f(x-1+ky)) for the upward step.
// Verifies the leading-coefficient identity and throws std::logic_error
// if it fails, since that identity is a theorem.
BoundaryPoly p_construct(const IntPolynomial& f, unsigned sigma, unsigned ell,
                         bool step_up = false);

// sum_k b_k f(x+ky): the sigma-th difference of f along step y.  Must be
// identically zero whenever sigma >= deg(f)+1; throws std::logic_error
// otherwise.
BivariatePolynomial poly_diff_power(const IntPolynomial& f, unsigned sigma);

}  // namespace hmlab
