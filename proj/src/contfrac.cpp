#include "hmlab/contfrac.hpp"

#include <cassert>
#include <map>
#include <set>
#include <tuple>

#include "hmlab/errors.hpp"

namespace hmlab {

ContinuedFraction::ContinuedFraction(std::vector<mpz_class> quotients,
                                     RealScalar source,
                                     std::optional<PeriodicTail> tail)
    : quotients_(std::move(quotients)), source_(std::move(source)),
      tail_(std::move(tail)) {
    if (quotients_.empty() || quotients_[0] < 0)
        throw ValueError("continued fraction needs a_0 >= 0");
    for (std::size_t i = 1; i < quotients_.size(); ++i)
        if (quotients_[i] < 1)
            throw ValueError("partial quotients must be >= 1 past a_0");
}

namespace {

struct QuadLess {
    bool operator()(const Quadratic& x, const Quadratic& y) const {
        if (x.a() != y.a()) return x.a() < y.a();
        if (x.b() != y.b()) return x.b() < y.b();
        return x.d() < y.d();
    }
};

ContinuedFraction expand_exact(const Quadratic& theta, const RealScalar& src,
                               std::size_t N) {
    std::vector<mpz_class> qs;
    qs.reserve(N + 1);
    qs.push_back(theta.floor());
    Quadratic x = theta;
    std::map<Quadratic, std::size_t, QuadLess> seen;
    std::optional<PeriodicTail> tail;
    for (std::size_t k = 1; k <= N; ++k) {
        Quadratic frac = x - Quadratic(mpq_class(qs[k - 1]));
        assert(!frac.is_zero());
        x = frac.inverse();
        auto [it, fresh] = seen.emplace(x, k);
        if (!fresh) {
            // The complete quotient repeats: synthesize the rest of the
            // expansion from the detected cycle.
            std::size_t start = it->second, period = k - start;
            tail = PeriodicTail{start, period};
            for (std::size_t j = k; j <= N; ++j)
                qs.push_back(qs[start + (j - start) % period]);
            break;
        }
        qs.push_back(x.floor());
    }
    return ContinuedFraction(std::move(qs), src, tail);
}

mpz_class mpq_floor(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

ContinuedFraction expand_stream(const RealScalar& theta, std::size_t N,
                                long p_max) {
    long p = 64;
    while (true) {
        Enclosure e = theta.refine(p);
        mpq_class lo = e.lo().to_mpq(), hi = e.hi().to_mpq();
        std::vector<mpz_class> qs;
        bool complete = true;
        for (std::size_t k = 0; k <= N; ++k) {
            mpz_class alo = mpq_floor(lo), ahi = mpq_floor(hi);
            if (alo != ahi) {
                complete = false;
                break;
            }
            qs.push_back(alo);
            if (k == N) break;
            mpq_class flo = lo - mpq_class(alo), fhi = hi - mpq_class(alo);
            if (flo == 0) {
                // Lower endpoint sits on the integer: the value might be
                // rational, so only refinement can tell.
                complete = false;
                break;
            }
            mpq_class nlo = 1 / fhi, nhi = 1 / flo;
            lo = nlo;
            hi = nhi;
        }
        if (complete)
            return ContinuedFraction(std::move(qs), theta, std::nullopt);
        if (p >= p_max)
            throw PrecisionExhausted("continued fraction undecided at " +
                                     std::to_string(p_max) + " bits");
        p = std::min(2 * p, p_max);
    }
}

}  // namespace

ContinuedFraction expand(const RealScalar& theta, std::size_t N, long p_max) {
    if (N < 1) throw ValueError("expansion needs at least one quotient");
    if (theta.exact()) {
        const Quadratic& t = theta.field_value();
        if (t.is_rational())
            throw ValueError("continued-fraction input must be irrational");
        if (t.sign() <= 0 || t >= Quadratic(1))
            throw ValueError("continued-fraction input must lie in (0,1)");
        return expand_exact(t, theta, N);
    }
    return expand_stream(theta, N, p_max);
}

ConvergentTable::ConvergentTable(const ContinuedFraction& cf) {
    const auto& a = cf.quotients();
    rows_.reserve(a.size());
    mpz_class p_prev2 = 1, q_prev2 = 0;  // p_{-1}, q_{-1}
    mpz_class p_prev = a[0], q_prev = 1;
    rows_.push_back({0, a[0], p_prev, q_prev});
    for (std::size_t n = 1; n < a.size(); ++n) {
        mpz_class p = a[n] * p_prev + p_prev2;
        mpz_class q = a[n] * q_prev + q_prev2;
        // p_n q_{n-1} - p_{n-1} q_n = (-1)^{n-1}
        assert(p * q_prev - p_prev * q == ((n - 1) % 2 == 0 ? 1 : -1));
        rows_.push_back({n, a[n], p, q});
        p_prev2 = p_prev;
        q_prev2 = q_prev;
        p_prev = p;
        q_prev = q;
    }
}

ApproxBoundsReport check_approx_bounds(const ContinuedFraction& cf,
                                       const ConvergentTable& table,
                                       std::size_t n, long p_max) {
    if (n + 1 > cf.last_index())
        throw InsufficientQuotients("bound check at n needs quotient a_{n+1}");
    const ConvergentRow& row = table.row(n);
    const mpz_class& a_next = cf.at(n + 1);
    mpq_class lower(1, 1), upper(1, 1);
    lower /= mpq_class((a_next + 2) * row.q);
    upper /= mpq_class(a_next * row.q);
    const RealScalar& theta = cf.source();
    if (theta.exact()) {
        Quadratic v =
            (theta.field_value() * Quadratic(mpq_class(row.q)) -
             Quadratic(mpq_class(row.p))).abs();
        bool pass = Quadratic(lower) < v && v < Quadratic(upper);
        return {n, lower, upper, v.enclose(96), pass};
    }
    long p = 64;
    while (true) {
        long wp = p + static_cast<long>(mpz_sizeinbase(row.q.get_mpz_t(), 2)) + 2;
        Enclosure e = (theta.refine(wp).scale(Dyadic(row.q, 0)) -
                       Enclosure::point(Dyadic(row.p, 0))).abs();
        if (lower < e.lo().to_mpq() && e.hi().to_mpq() < upper)
            return {n, lower, upper, e, true};
        if (e.hi().to_mpq() < lower || upper < e.lo().to_mpq())
            return {n, lower, upper, e, false};
        if (p >= p_max)
            throw PrecisionExhausted("approximation bounds undecided at cap");
        p = std::min(2 * p, p_max);
    }
}

BestApproxReport verify_best_approx(const RealScalar& theta,
                                    const ConvergentTable& table,
                                    const mpz_class& Q, long p_max) {
    (void)p_max;
    if (Q < 1) throw ValueError("best-approximation bound must be >= 1");
    if (Q > table.rows().back().q)
        throw InsufficientQuotients("table stops short of the scan bound");
    if (!theta.exact())
        throw UnsupportedField(
            "best-approximation scan needs an exact field value");
    const Quadratic& t = theta.field_value();
    Quadratic half(mpq_class(1, 2)), one(1);

    BestApproxReport rep;
    rep.Q = Q;
    std::optional<Quadratic> record;
    for (mpz_class q = 1; q <= Q; ++q) {
        Quadratic fr = (t * Quadratic(mpq_class(q))).frac();
        Quadratic dist = fr <= half ? fr : one - fr;
        if (!record || dist < *record) {
            record = dist;
            rep.best_q.push_back(q);
        }
    }
    std::set<mpz_class> expected;
    for (const auto& row : table.rows())
        if (row.q <= Q) expected.insert(row.q);
    rep.expected_q.assign(expected.begin(), expected.end());
    rep.pass = rep.best_q == rep.expected_q;
    return rep;
}

IndexSelection select_indices(const ContinuedFraction& cf, SelectionMode mode,
                              std::size_t count) {
    if (count < 1) throw ValueError("index selection needs count >= 1");
    if (mode == SelectionMode::AutoQuadratic)
        mode = cf.periodic_tail() ? SelectionMode::Bounded
                                  : SelectionMode::Unbounded;
    const auto& a = cf.quotients();
    std::size_t N = cf.last_index();

    IndexSelection sel;
    sel.mode = mode;
    if (mode == SelectionMode::Bounded) {
        // l_n = 2n, skipping l = 0 so the window m <= l_n is never empty.
        if (2 * count + 1 > N)
            throw InsufficientQuotients("bounded selection needs quotients up "
                                        "to index 2*count+1");
        sel.parity = Parity::Even;
        for (std::size_t n = 1; n <= count; ++n) sel.indices.push_back(2 * n);
    } else {
        // Record scan: keep l where a_{l+1} dominates every earlier
        // quotient, then restrict to the majority parity.
        std::vector<std::size_t> cand;
        mpz_class best = a[0];
        for (std::size_t l = 1; l + 1 <= N; ++l) {
            if (a[l] > best) best = a[l];
            if (a[l + 1] >= best) cand.push_back(l);
        }
        std::size_t odd = 0;
        for (std::size_t l : cand) odd += l % 2;
        Parity par;
        if (2 * odd > cand.size())
            par = Parity::Odd;
        else if (2 * odd < cand.size())
            par = Parity::Even;
        else
            par = cand.empty() || cand[0] % 2 == 0 ? Parity::Even : Parity::Odd;
        sel.parity = par;
        for (std::size_t l : cand) {
            if ((l % 2 == 1) == (par == Parity::Odd)) sel.indices.push_back(l);
            if (sel.indices.size() == count) break;
        }
        if (sel.indices.size() < count)
            throw InsufficientQuotients("record scan found too few indices "
                                        "of the chosen parity");
    }

    ConvergentTable table(cf);
    std::optional<mpq_class> eps;
    for (std::size_t l : sel.indices) {
        sel.shifts.push_back(table.row(l).q);
        for (std::size_t m = 0; m <= l; ++m) {
            mpq_class ratio(a[l + 1], a[m + 1] + 2);
            ratio.canonicalize();
            if (!eps || ratio < *eps) eps = ratio;
        }
    }
    sel.epsilon = *eps;
    return sel;
}

}  // namespace hmlab
