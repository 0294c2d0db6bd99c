#include "hmlab/floorseq.hpp"

#include <algorithm>
#include <cassert>

#include "hmlab/errors.hpp"

namespace hmlab {

Window parse_window(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ValueError("window must look like lo:hi, got '" + text + "'");
    try {
        Window w;
        w.lo = std::stol(text.substr(0, colon));
        w.hi = std::stol(text.substr(colon + 1));
        if (w.lo < 0 || w.hi < w.lo)
            throw ValueError("window needs 0 <= lo <= hi, got '" + text + "'");
        return w;
    } catch (const std::invalid_argument&) {
        throw ValueError("malformed window '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ValueError("window bounds out of range in '" + text + "'");
    }
}

static void require_unit_interval(const RealScalar& x, const char* what,
                                  bool must_be_irrational) {
    if (x.exact()) {
        const Quadratic& v = x.field_value();
        if (must_be_irrational && v.is_rational())
            throw ValueError(std::string(what) + " must be irrational");
        if (v.sign() <= 0 || v >= Quadratic(1))
            throw ValueError(std::string(what) + " must lie in (0,1)");
        return;
    }
    // Streams: only a sanity check is possible.
    Enclosure e = x.refine(8);
    if (e.hi().sign() <= 0 || e.lo() >= Dyadic(1))
        throw ValueError(std::string(what) + " must lie in (0,1)");
}

FloorSeq::FloorSeq(IntPolynomial f, RealScalar theta, RealScalar alpha,
                   long p_max)
    : f_(std::move(f)), theta_(std::move(theta)), alpha_(std::move(alpha)),
      p_max_(p_max) {
    if (f_.is_zero() || f_.degree() < 1)
        throw ValueError("floor sequence needs a non-constant polynomial");
    require_unit_interval(theta_, "theta", true);
    require_unit_interval(alpha_, "alpha", false);
    if (theta_.exact() && alpha_.exact()) {
        try {
            acc_ = alpha_.field_value() + Quadratic(mpq_class(0));
            // Probe the field merge once; mixed radicands fall back to
            // per-position refinement.
            (void)(theta_.field_value() + alpha_.field_value());
        } catch (const UnsupportedField&) {
            acc_.reset();
        }
    }
}

void FloorSeq::extend(std::size_t m) const {
    while (floors_.size() <= m) {
        std::size_t idx = floors_.size();
        mpz_class fl;
        if (acc_) {
            if (idx > 0) *acc_ = *acc_ + theta_.field_value();
            fl = acc_->floor();
        } else {
            fl = floor_linear(mpz_class(static_cast<unsigned long>(idx)),
                              theta_, alpha_, p_max_);
        }
        floors_.push_back(fl);
        values_.push_back(f_.eval(fl));
    }
}

const mpz_class& FloorSeq::u(std::size_t m) const {
    extend(m);
    return values_[m];
}

const mpz_class& FloorSeq::floor_at(std::size_t m) const {
    extend(m);
    return floors_[m];
}

std::vector<mpz_class> u_seq(const IntPolynomial& f, const RealScalar& theta,
                             const RealScalar& alpha, Window w, long p_max) {
    FloorSeq fs(f, theta, alpha, p_max);
    std::vector<mpz_class> out;
    out.reserve(w.hi - w.lo + 1);
    for (long m = w.lo; m <= w.hi; ++m)
        out.push_back(fs.u(static_cast<std::size_t>(m)));
    return out;
}

DifferenceScheme::DifferenceScheme(unsigned sigma,
                                   std::vector<mpz_class> shifts,
                                   std::size_t first_index)
    : sigma_(sigma), weights_(binom_weights(sigma)),
      shifts_(std::move(shifts)), first_(first_index) {
    if (shifts_.empty()) throw ValueError("difference scheme needs shifts");
    for (const auto& r : shifts_)
        if (r < 1) throw ValueError("shifts must be positive");
}

DifferenceScheme DifferenceScheme::from_table(unsigned sigma,
                                              const ConvergentTable& table) {
    std::vector<mpz_class> shifts;
    shifts.reserve(table.size());
    for (const auto& row : table.rows()) shifts.push_back(row.q);
    return DifferenceScheme(sigma, std::move(shifts), 0);
}

DifferenceScheme DifferenceScheme::from_selection(unsigned sigma,
                                                  const IndexSelection& sel) {
    return DifferenceScheme(sigma, sel.shifts, 1);
}

const mpz_class& DifferenceScheme::shift(std::size_t n) const {
    if (n < first_ || n - first_ >= shifts_.size())
        throw ValueError("shift index outside the scheme");
    return shifts_[n - first_];
}

SparsitySlice w_scan(const DifferenceScheme& scheme, const FloorSeq& fs,
                     std::size_t n, Window w) {
    const mpz_class& r = scheme.shift(n);
    if (r > mpz_class(1) << 40)
        throw ValueError("shift too large for a windowed scan");
    long r_l = r.get_si();
    unsigned sigma = scheme.sigma();
    const auto& b = scheme.weights();

    SparsitySlice slice;
    slice.n = n;
    slice.r = r;
    slice.window = w;
    for (long m = w.lo; m <= w.hi; ++m) {
        mpz_class wval(0);
        for (unsigned i = 0; i <= sigma; ++i)
            wval += b[i] * fs.u(static_cast<std::size_t>(m + i * r_l));
        if (wval != 0) slice.entries.emplace_back(m, std::move(wval));
    }
    for (std::size_t i = 1; i < slice.entries.size(); ++i) {
        long gap = slice.entries[i].first - slice.entries[i - 1].first;
        if (!slice.mu || gap < *slice.mu) slice.mu = gap;
    }
    return slice;
}

GapReport gap_check(const SparsitySlice& slice, const mpq_class& epsilon,
                    unsigned sigma) {
    if (slice.entries.size() < 2)
        throw WindowTooSmall("gap check needs at least two nonzero positions");
    mpq_class bound = epsilon * mpq_class(slice.r) / mpq_class(sigma);
    bound.canonicalize();
    return {*slice.mu, bound, mpq_class(*slice.mu) >= bound};
}

VariationReport variation_fit(const std::vector<SparsitySlice>& slices,
                              unsigned c0) {
    if (slices.empty()) throw ValueError("variation fit needs slices");
    VariationReport rep;
    rep.c_max = 0;
    for (const auto& slice : slices) {
        mpq_class local(0);
        const auto& e = slice.entries;
        for (std::size_t j = 1; j < e.size(); ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                mpz_class gap(e[j].first - e[i].first);
                mpz_class gp;
                mpz_pow_ui(gp.get_mpz_t(), gap.get_mpz_t(), c0);
                mpq_class ratio(abs(e[j].second), gp + abs(e[i].second));
                ratio.canonicalize();
                if (ratio > local) local = ratio;
            }
        }
        rep.per_slice.emplace_back(slice.n, local);
        if (local > rep.c_max) rep.c_max = local;
    }
    rep.pass = true;
    return rep;
}

namespace {

// -1, 0, +1, or 2 when an interval comparison cannot be decided.
int enc_cmp(const Enclosure& a, const Enclosure& b) {
    if (a.hi() < b.lo()) return -1;
    if (a.lo() > b.hi()) return 1;
    if (a.width().is_zero() && b.width().is_zero()) return 0;
    return 2;
}

ClassifyResult classify_exact(long m, unsigned sigma, const mpz_class& r,
                              const Quadratic& theta, const Quadratic& alpha) {
    Quadratic one(1);
    Quadratic phi = (theta * Quadratic(mpq_class(r))).frac();
    int side = phi.cmp(Quadratic(mpq_class(1, 2)));
    if (side == 0) return {CaseKind::Undecided, 0, false};
    bool up = side > 0;
    Quadratic step = up ? one - phi : phi;
    if (!(Quadratic(static_cast<long>(sigma)) * step < one))
        throw ValueError("sigma * ||r theta|| must stay below 1");
    Quadratic frac = (theta * Quadratic(mpq_class(m)) + alpha).frac();
    // Distance from the edge the floor increments break at.
    Quadratic y = up ? frac : one - frac;
    for (unsigned j = 1; j <= sigma; ++j) {
        int c = y.cmp(Quadratic(static_cast<long>(j)) * step);
        if (c == 0) return {CaseKind::Undecided, 0, up};
        if (c < 0) return {CaseKind::Boundary, j - 1, up};
    }
    return {CaseKind::Zero, 0, up};
}

ClassifyResult classify_stream(long m, unsigned sigma, const mpz_class& r,
                               const RealScalar& theta,
                               const RealScalar& alpha, long p_max) {
    mpz_class rfloor = floor_linear(r, theta, RealScalar(0), p_max);
    mpz_class mfloor = floor_linear(mpz_class(m), theta, alpha, p_max);
    long p = 64;
    while (true) {
        long rbits = static_cast<long>(mpz_sizeinbase(r.get_mpz_t(), 2));
        Enclosure rt = theta.refine(p + rbits + 2).scale(Dyadic(r, 0));
        Enclosure phi = rt - Enclosure::point(Dyadic(rfloor, 0));
        Enclosure half = Enclosure::point(Dyadic(mpz_class(1), -1));
        int side = enc_cmp(phi, half);
        if (side == 0) return {CaseKind::Undecided, 0, false};
        while (side != 2) {
            bool up = side > 0;
            Enclosure one = Enclosure::point(Dyadic(1));
            Enclosure step = up ? one - phi : phi;
            int pre = enc_cmp(step.scale(Dyadic(mpz_class(sigma), 0)), one);
            if (pre == 1 || pre == 0)
                throw ValueError("sigma * ||r theta|| must stay below 1");
            if (pre == 2) break;
            long mbits =
                static_cast<long>(mpz_sizeinbase(mpz_class(m).get_mpz_t(), 2));
            Enclosure lin = theta.refine(p + mbits + 2)
                                .scale(Dyadic(mpz_class(m), 0)) +
                            alpha.refine(p + mbits + 2);
            Enclosure frac = lin - Enclosure::point(Dyadic(mfloor, 0));
            Enclosure y = up ? frac : one - frac;
            unsigned j = 1;
            for (; j <= sigma; ++j) {
                int c = enc_cmp(y, step.scale(Dyadic(mpz_class(j), 0)));
                if (c == -1) return {CaseKind::Boundary, j - 1, up};
                if (c == 0) return {CaseKind::Undecided, 0, up};
                if (c == 2) break;
            }
            if (j > sigma) return {CaseKind::Zero, 0, up};
            break;
        }
        if (p >= p_max)
            throw PrecisionExhausted("case split undecided at precision cap");
        p = std::min(2 * p, p_max);
    }
}

}  // namespace

ClassifyResult classify(long m, const DifferenceScheme& scheme, std::size_t n,
                        const RealScalar& theta, const RealScalar& alpha,
                        long p_max) {
    if (m < 0) throw ValueError("positions are nonnegative");
    const mpz_class& r = scheme.shift(n);
    if (theta.exact() && alpha.exact()) {
        try {
            return classify_exact(m, scheme.sigma(), r, theta.field_value(),
                                  alpha.field_value());
        } catch (const UnsupportedField&) {
            // Mixed radicands: same fallback as floor_linear.
        }
    }
    return classify_stream(m, scheme.sigma(), r, theta, alpha, p_max);
}

ConsistencyReport check_case_consistency(const DifferenceScheme& scheme,
                                         const FloorSeq& fs,
                                         const SparsitySlice& slice) {
    const mpz_class& r = slice.r;
    mpz_class bdown = floor_linear(r, fs.theta(), RealScalar(0),
                                   fs.precision_cap());
    mpz_class bup = bdown + 1;
    // Boundary polynomials per (direction, crossing index), built lazily.
    std::vector<std::optional<BoundaryPoly>> polys(2 * scheme.sigma());

    ConsistencyReport rep;
    auto entry = slice.entries.begin();
    for (long m = slice.window.lo; m <= slice.window.hi; ++m) {
        while (entry != slice.entries.end() && entry->first < m) ++entry;
        const mpz_class* w = nullptr;
        static const mpz_class zero(0);
        w = (entry != slice.entries.end() && entry->first == m)
                ? &entry->second
                : &zero;
        ClassifyResult c =
            classify(m, scheme, slice.n, fs.theta(), fs.alpha(),
                     fs.precision_cap());
        ++rep.checked;
        if (c.kind == CaseKind::Undecided) {
            rep.undecided.push_back(m);
            continue;
        }
        if (c.kind == CaseKind::Zero) {
            if (*w != 0) rep.mismatches.push_back(m);
            continue;
        }
        std::size_t slot = (c.step_up ? scheme.sigma() : 0) + c.ell;
        if (!polys[slot])
            polys[slot] = p_construct(fs.poly(), scheme.sigma(), c.ell,
                                      c.step_up);
        const mpz_class& A = fs.floor_at(static_cast<std::size_t>(m));
        mpz_class expect = polys[slot]->p.eval(A, c.step_up ? bup : bdown);
        if (expect != *w) rep.mismatches.push_back(m);
    }
    rep.pass = rep.mismatches.empty() && rep.undecided.empty();
    return rep;
}

BoundaryFitReport boundary_fit(const std::vector<SparsitySlice>& slices,
                               unsigned sigma, unsigned M) {
    if (sigma < 2) throw ValueError("fit needs sigma >= 2");
    BoundaryFitReport rep;
    rep.M = M;
    rep.count = 0;
    for (const auto& slice : slices) {
        mpz_class cutoff = mpz_class(M) * slice.r;
        for (const auto& [m, w] : slice.entries) {
            if (m <= cutoff) continue;
            mpz_class mp;
            mpz_ui_pow_ui(mp.get_mpz_t(), static_cast<unsigned long>(m),
                          sigma - 2);
            mpq_class ratio(abs(w), mp);
            ratio.canonicalize();
            if (rep.count == 0) {
                rep.eps1 = rep.eps2 = ratio;
            } else {
                if (ratio < rep.eps1) rep.eps1 = ratio;
                if (ratio > rep.eps2) rep.eps2 = ratio;
            }
            ++rep.count;
        }
    }
    rep.pass = rep.count > 0 && rep.eps1 > 0;
    return rep;
}

DioReport dio_check(const RealScalar& theta, const mpz_class& r,
                    const mpq_class& epsilon, unsigned sigma) {
    if (!theta.exact() || theta.field_value().is_rational())
        throw UnsupportedField(
            "the approximation scan needs an exact irrational theta");
    if (r < 2) throw ValueError("shift must be >= 2 to leave room for q");
    const Quadratic& t = theta.field_value();
    Quadratic half(mpq_class(1, 2)), one(1);
    auto dist = [&](const mpz_class& q) {
        Quadratic fr = (t * Quadratic(mpq_class(q))).frac();
        return fr <= half ? fr : one - fr;
    };
    Quadratic threshold = Quadratic(static_cast<long>(sigma)) * dist(r);

    DioReport rep;
    rep.r = r;
    rep.q_bound = epsilon * mpq_class(r) / mpq_class(sigma);
    rep.q_bound.canonicalize();
    for (mpz_class q = 1; q < r; ++q) {
        if (dist(q) < threshold) {
            rep.qualifying.push_back(q);
            if (mpq_class(q) < rep.q_bound) rep.violations.push_back(q);
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

DioReport dio_check(const RealScalar& theta, const IndexSelection& sel,
                    std::size_t n, unsigned sigma) {
    if (n < 1 || n > sel.shifts.size())
        throw ValueError("selection index out of range");
    return dio_check(theta, sel.shifts[n - 1], sel.epsilon, sigma);
}

}  // namespace hmlab
