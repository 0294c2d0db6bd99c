#include "hmlab/lll.hpp"

#include <stdexcept>

namespace hmlab {

namespace {

mpq_class dot(const std::vector<mpz_class>& a, const std::vector<mpq_class>& b) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += mpq_class(a[i]) * b[i];
    return s;
}

mpq_class dot(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Gso {
    std::vector<std::vector<mpq_class>> star;  // orthogonalized rows
    std::vector<std::vector<mpq_class>> mu;
    std::vector<mpq_class> norm;               // |b*_i|^2
};

Gso orthogonalize(const std::vector<std::vector<mpz_class>>& basis) {
    std::size_t n = basis.size(), m = basis[0].size();
    Gso g;
    g.star.assign(n, std::vector<mpq_class>(m, 0));
    g.mu.assign(n, std::vector<mpq_class>(n, 0));
    g.norm.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < m; ++c) g.star[i][c] = mpq_class(basis[i][c]);
        for (std::size_t j = 0; j < i; ++j) {
            if (g.norm[j] == 0) continue;  // dependent row, nothing to project
            g.mu[i][j] = dot(basis[i], g.star[j]) / g.norm[j];
            for (std::size_t c = 0; c < m; ++c) {
                g.star[i][c] -= g.mu[i][j] * g.star[j][c];
            }
        }
        g.norm[i] = dot(g.star[i], g.star[i]);
    }
    return g;
}

}  // namespace

mpz_class round_nearest(const mpq_class& x) {
    mpz_class num = x.get_num() * 2 + x.get_den();
    mpz_class den = x.get_den() * 2;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

void lll_reduce(std::vector<std::vector<mpz_class>>& basis) {
    if (basis.empty()) return;
    std::size_t n = basis.size(), m = basis[0].size();
    for (const auto& row : basis) {
        if (row.size() != m) throw std::invalid_argument("ragged basis");
    }
    if (n == 1) return;

    const mpq_class delta(3, 4);
    Gso g = orthogonalize(basis);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            mpz_class r = round_nearest(g.mu[k][j]);
            if (r != 0) {
                for (std::size_t c = 0; c < m; ++c) basis[k][c] -= r * basis[j][c];
                g = orthogonalize(basis);
            }
        }
        mpq_class lhs = g.norm[k];
        mpq_class rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            g = orthogonalize(basis);
            k = (k > 1) ? k - 1 : 1;
        }
    }
}

}  // namespace hmlab
