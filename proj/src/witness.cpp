#include "hmlab/witness.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

#include "hmlab/errors.hpp"
#include "hmlab/series.hpp"

namespace hmlab {

namespace {

long to_long(const mpz_class& z) {
    if (!z.fits_slong_p()) throw ValueError("index does not fit a machine word");
    return z.get_si();
}

// Upper estimate of log2|x| rounded to a safe margin, used only to size
// working precisions.
long scale_bits(const Quadratic& x) {
    if (x.is_zero()) return 0;
    double l = approx_log2(x.enclose(16));
    if (l < 0) return 0;
    return static_cast<long>(l) + 2;
}

unsigned long checked_ulong(const mpz_class& z) {
    if (!z.fits_ulong_p()) throw ValueError("exponent does not fit a machine word");
    return z.get_ui();
}

// Linear-form exponent 2*deg*sigma*|S|, shared by the rho comparisons.
mpz_class rho_exponent(const RhoValue& rho) {
    return mpz_class(2) * rho.deg * rho.sigma *
           static_cast<unsigned long>(rho.s_size);
}

}  // namespace

bool RhoValue::exceeds(const mpz_class& m, const mpz_class& r) const {
    if (override_value) {
        return mpq_class(m) > *override_value * mpq_class(r);
    }
    if (exact) return mpq_class(m) > *exact * mpq_class(r);
    // m > rho*r  iff  |beta|^m > kappa^(2 deg sigma |S| r), since |beta| > 1.
    mpz_class e = rho_exponent(*this) * r;
    Quadratic lhs = beta_abs.pow(to_long(m));
    Quadratic rhs(mpq_pow_si(kappa, to_long(e)));
    return lhs.cmp(rhs) > 0;
}

bool RhoValue::at_least(const mpz_class& m, const mpz_class& r) const {
    if (override_value) {
        return mpq_class(m) >= *override_value * mpq_class(r);
    }
    if (exact) return mpq_class(m) >= *exact * mpq_class(r);
    mpz_class e = rho_exponent(*this) * r;
    Quadratic lhs = beta_abs.pow(to_long(m));
    Quadratic rhs(mpq_pow_si(kappa, to_long(e)));
    return lhs.cmp(rhs) >= 0;
}

RhoValue rho_value(unsigned sigma, const PlaceSet& S) {
    RhoValue rho;
    rho.sigma = sigma;
    rho.s_size = S.size();
    rho.deg = S.field.degree();
    rho.kappa = S.kappa;
    rho.beta_abs = S.beta.abs();

    // log(kappa)/log|beta| is rational exactly when some powers match;
    // scan a small box so the common cases get an exact display value.
    for (unsigned long v = 1; v <= 24 && !rho.exact; ++v) {
        mpq_class kv = mpq_pow_si(rho.kappa, static_cast<long>(v));
        for (unsigned long u = 1; u <= 24; ++u) {
            if (rho.beta_abs.pow(static_cast<long>(u)).cmp(Quadratic(kv)) == 0) {
                rho.exact = mpq_class(rho_exponent(rho)) * mpq_class(u) /
                            mpq_class(v);
                break;
            }
        }
    }
    rho.approx = mpz_get_d(rho_exponent(rho).get_mpz_t()) *
                 std::log2(mpq_get_d(rho.kappa.get_mpq_t())) /
                 approx_log2(rho.beta_abs.enclose(64));
    return rho;
}

RhoValue rho_with_override(unsigned sigma, const PlaceSet& S,
                           const mpq_class& value) {
    if (value <= 0) throw ValueError("override threshold must be positive");
    RhoValue rho = rho_value(sigma, S);
    rho.override_value = value;
    rho.approx = mpq_get_d(value.get_mpq_t());
    return rho;
}

WitnessParams witness_params(unsigned sigma, const PlaceSet& S,
                             const std::vector<SparsitySlice>& slices,
                             const std::optional<mpq_class>& rho_override) {
    if (slices.empty()) throw WindowTooSmall("no slices supplied");
    std::vector<SparsitySlice> sorted = slices;
    std::sort(sorted.begin(), sorted.end(),
              [](const SparsitySlice& a, const SparsitySlice& b) {
                  return a.n < b.n;
              });

    WitnessParams params;
    params.rho = rho_override ? rho_with_override(sigma, S, *rho_override)
                              : rho_value(sigma, S);

    // delta_n = first 1-based position index beyond rho*r_n.
    std::vector<std::optional<unsigned>> jumps(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const SparsitySlice& sl = sorted[i];
        for (std::size_t j = 0; j < sl.entries.size(); ++j) {
            if (params.rho.exceeds(mpz_class(sl.entries[j].first), sl.r)) {
                jumps[i] = static_cast<unsigned>(j + 1);
                break;
            }
        }
    }

    // Pick the earliest n0 whose suffix has every jump defined and enough
    // positions past it to cut at delta+1.
    for (std::size_t start = 0; start < sorted.size(); ++start) {
        bool ok = true;
        unsigned dmax = 0;
        for (std::size_t i = start; i < sorted.size(); ++i) {
            if (!jumps[i]) {
                ok = false;
                break;
            }
            dmax = std::max(dmax, *jumps[i]);
        }
        if (!ok) continue;
        for (std::size_t i = start; i < sorted.size(); ++i) {
            if (sorted[i].entries.size() < dmax + 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        params.delta = dmax;
        params.n0 = sorted[start].n;
        for (std::size_t i = start; i < sorted.size(); ++i) {
            const SparsitySlice& sl = sorted[i];
            std::vector<long> pos;
            for (unsigned j = 0; j <= dmax; ++j) {
                pos.push_back(sl.entries[j].first);
            }
            params.s_n[sl.n] = pos.back() - 1;
            params.positions[sl.n] = std::move(pos);
            params.delta_n[sl.n] = *jumps[i];
        }
        return params;
    }
    throw WindowTooSmall("window holds too few positions past the threshold");
}

WitnessVector build_a(const SparsitySlice& slice, const DifferenceScheme& scheme,
                      const WitnessParams& params, const Quadratic& beta,
                      const FloorSeq& fs, const PlaceSet& S) {
    auto it = params.positions.find(slice.n);
    if (it == params.positions.end()) {
        throw ValueError("slice index precedes the reported n0");
    }
    unsigned sigma = scheme.sigma();
    unsigned delta = params.delta;
    long r = to_long(slice.r);

    WitnessVector v;
    v.n = slice.n;
    v.r = slice.r;
    v.sigma = sigma;
    v.delta = delta;
    v.s_n = params.s_n.at(slice.n);
    v.positions.assign(it->second.begin(), it->second.begin() + delta);

    const std::vector<mpz_class>& b = scheme.weights();
    v.a.reserve(sigma + delta + 2);
    for (unsigned i = 0; i <= sigma; ++i) {
        v.a.push_back(beta.pow(static_cast<long>(i) * r));
    }

    // Head compensation: sum_i b_i * sum_{m < i*r} u_m beta^(i*r - m).
    Quadratic head(0);
    for (unsigned i = 0; i <= sigma; ++i) {
        Quadratic partial(0);
        long top = static_cast<long>(i) * r;
        for (long m = 0; m < top; ++m) {
            partial = (partial + Quadratic(mpq_class(fs.u(m)))) * beta;
        }
        head = head + Quadratic(mpq_class(b[i])) * partial;
    }
    v.a.push_back(head);

    for (unsigned j = 0; j < delta; ++j) {
        long m = v.positions[j];
        const auto& entry = slice.entries[j];
        if (entry.first != m) {
            throw std::logic_error("slice entries diverge from stored positions");
        }
        v.w_at.push_back(entry.second);
        v.a.push_back(Quadratic(mpq_class(entry.second)) * beta.pow(-m));
    }

    for (const Quadratic& x : v.a) {
        if (!x.is_zero() && !S.field.s_integral(S.finite, x)) {
            throw std::logic_error("witness coordinate left the S-integers");
        }
    }
    return v;
}

LinFormReport eval_L(const WitnessVector& v, const DifferenceScheme& scheme,
                     const FloorSeq& fs, const Quadratic& beta,
                     const SeriesFn& series_at, long p) {
    if (p < 1) throw ValueError("precision must be positive");
    unsigned sigma = v.sigma;
    const std::vector<mpz_class>& b = scheme.weights();
    long r = to_long(v.r);

    // Work far below the natural scale |beta|^(-s_n) of the form, so the
    // two routes have to land on the same thin interval.
    long pl = p + v.s_n + 64;

    Quadratic g(0);
    for (unsigned i = 0; i <= sigma; ++i) {
        g = g + Quadratic(mpq_class(b[i])) * v.a[i];
    }
    Quadratic rest(0);
    for (std::size_t i = sigma + 1; i < v.a.size(); ++i) {
        rest = rest + v.a[i];
    }

    long pf = pl + std::max(scale_bits(g), scale_bits(rest)) + 8;
    Enclosure f_val = series_at(pf);
    LinFormReport report;
    report.n = v.n;
    report.direct = f_val * g.enclose(pf) - rest.enclose(pf);

    // Tail route: the form equals sum_{m > s_n} w_m beta^(-m) exactly.
    Quadratic t = beta.abs().inverse();
    mpz_class cw = fs.poly().abs_coeff_sum() << sigma;  // sum|b_i| = 2^sigma
    unsigned D = static_cast<unsigned>(fs.poly().degree());
    Quadratic target(mpq_pow_si(mpq_class(1, 2), pl + 8));

    long horizon = v.s_n + 64;
    std::optional<Quadratic> rem;
    while (true) {
        rem = polynomial_geometric_tail(cw, D, static_cast<long>(sigma) * r + 1,
                                        t, horizon);
        if (rem && rem->cmp(target) <= 0) break;
        horizon = v.s_n + 2 * (horizon - v.s_n);
        if (horizon > v.s_n + (1L << 24)) {
            throw std::logic_error("tail horizon failed to converge");
        }
    }
    report.horizon = horizon;

    Quadratic binv = beta.inverse();
    Quadratic partial(0);
    for (long m = horizon; m > v.s_n; --m) {
        mpz_class w = 0;
        for (unsigned i = 0; i <= sigma; ++i) {
            w += b[i] * fs.u(m + static_cast<long>(i) * r);
        }
        partial = partial * binv + Quadratic(mpq_class(w));
    }
    partial = partial * binv.pow(v.s_n + 1);

    long pt = pl + 8;
    Enclosure lo_side = (partial - *rem).enclose(pt);
    Enclosure hi_side = (partial + *rem).enclose(pt);
    report.tail = Enclosure(lo_side.lo(), hi_side.hi());

    report.consistent = report.direct.intersects(report.tail);
    report.combined =
        report.consistent ? report.direct.intersect(report.tail) : report.direct;
    return report;
}

namespace {

// Exact decision of lhs^v * H^u <= 1 through outward-rounded powers.
bool epsilon_decision(const Enclosure& lhs_pow, const Quadratic& height_pow,
                      const mpq_class& epsilon) {
    unsigned long u = checked_ulong(mpz_class(epsilon.get_num()));
    unsigned long vv = checked_ulong(mpz_class(epsilon.get_den()));
    long hp = scale_bits(height_pow) + 64;
    Enclosure prod = lhs_pow.abs().pow(vv) * height_pow.enclose(hp).pow(u);
    return prod.hi() <= Dyadic(1);
}

}  // namespace

SubspaceReport subspace_report(const std::vector<WitnessVector>& vectors,
                               const std::vector<LinFormReport>& forms,
                               const PlaceSet& S, const WitnessParams& params,
                               const mpq_class& epsilon) {
    if (vectors.size() != forms.size()) {
        throw ValueError("vector and form lists must align");
    }
    if (epsilon <= 0) throw ValueError("epsilon must be positive");
    SubspaceReport report;
    report.epsilon = epsilon;
    unsigned deg = S.field.degree();

    for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
        const WitnessVector& v = vectors[idx];
        const LinFormReport& form = forms[idx];
        if (form.n != v.n) throw ValueError("form index mismatch");
        unsigned sigma = v.sigma;

        SubspaceRow row;
        row.n = v.n;
        row.r = v.r;
        row.s_n = v.s_n;
        row.s_ge_rho_r = params.rho.at_least(mpz_class(v.s_n), v.r);

        // kappa^(sigma r |S|) <= |beta|^(s/(2 deg)), compared through the
        // (2 deg)-th powers.
        mpz_class ke = mpz_class(2) * deg * sigma * v.r *
                       static_cast<unsigned long>(S.size());
        Quadratic kpow(mpq_pow_si(S.kappa, to_long(ke)));
        Quadratic bpow = S.beta.abs().pow(v.s_n);
        bool kappa_ok = kpow.cmp(bpow) <= 0;
        row.kappa_power_ok = !row.s_ge_rho_r || kappa_ok;

        bool has_zero = std::any_of(v.a.begin(), v.a.end(),
                                    [](const Quadratic& x) { return x.is_zero(); });
        // a_0 = beta^0 = 1 pins the off-S places at one, so the S-restricted
        // height is the full height.
        HeightValue h = height_over(S, v.a);
        row.height_pow = h.hpow;
        row.height_log2 = approx_log2(h.hpow.enclose(32)) / deg;

        if (has_zero) {
            // A vanishing coordinate collapses the product; the inequality
            // holds with room to spare.
            row.lhs_pow = Enclosure::point(Dyadic(0));
            row.lhs_log2 = -std::numeric_limits<double>::infinity();
            row.epsilon_ok = true;
            report.rows.push_back(std::move(row));
            continue;
        }

        // Exact part of the place product: every pair (i, v) except the
        // linear form's own slot at the distinguished embedding.
        mpq_class finite = 1;
        for (const FinitePlace& pl : S.finite) {
            for (const Quadratic& x : v.a) {
                finite *= S.field.abs_pow(pl, x);
            }
        }
        Quadratic arch(finite);
        for (std::size_t i = 0; i < v.a.size(); ++i) {
            if (i == sigma + 1) continue;  // replaced by |L| at this embedding
            arch = arch * v.a[i].abs();
        }
        if (deg == 2) {
            for (const Quadratic& x : v.a) {
                arch = arch * x.conj().abs();
            }
        }

        long pa = scale_bits(arch) + v.s_n + 160;
        row.lhs_pow = form.combined.abs() * arch.enclose(pa);
        row.lhs_log2 = approx_log2(row.lhs_pow) / deg;
        row.epsilon_realized =
            (row.height_log2 > 0) ? -row.lhs_log2 / row.height_log2 : 0.0;
        row.epsilon_ok = epsilon_decision(row.lhs_pow, row.height_pow, epsilon);
        report.rows.push_back(std::move(row));
    }

    report.decay_ok = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (!(report.rows[i].lhs_pow.hi() < report.rows[i - 1].lhs_pow.lo())) {
            report.decay_ok = false;
        }
    }
    report.pass = report.decay_ok &&
                  std::all_of(report.rows.begin(), report.rows.end(),
                              [](const SubspaceRow& r) {
                                  return r.epsilon_ok && r.kappa_power_ok &&
                                         r.s_ge_rho_r;
                              });
    return report;
}

RatioDecayReport ratio_decay(const std::vector<WitnessVector>& vectors,
                             const Quadratic& beta) {
    (void)beta;
    RatioDecayReport report;
    if (vectors.size() < 2) {
        throw ValueError("ratio decay needs at least two indices");
    }
    unsigned sigma = vectors.front().sigma;
    std::size_t width = vectors.front().a.size();
    for (const WitnessVector& v : vectors) {
        if (v.a.size() != width) {
            throw ValueError("witness vectors have unequal shapes");
        }
        std::vector<double> logs;
        for (std::size_t i = sigma + 1; i + 1 < width; ++i) {
            double num = approx_log2(v.a[i + 1].enclose(32));
            double den = approx_log2(v.a[i].enclose(32));
            logs.push_back(num - den);
        }
        report.log2_ratios.push_back(std::move(logs));
    }

    for (std::size_t k = 1; k < vectors.size(); ++k) {
        const WitnessVector& prev = vectors[k - 1];
        const WitnessVector& cur = vectors[k];
        for (std::size_t i = sigma + 1; i + 1 < width; ++i) {
            // |a'_{i+1}|/|a'_i| < |a_{i+1}|/|a_i| without division.
            Quadratic lhs = cur.a[i + 1].abs() * prev.a[i].abs();
            Quadratic rhs = prev.a[i + 1].abs() * cur.a[i].abs();
            if (lhs.cmp(rhs) >= 0) {
                std::ostringstream os;
                os << "ratio at coordinate " << i + 1
                   << " fails to shrink from n=" << prev.n << " to n=" << cur.n;
                report.anomalies.push_back(os.str());
            }
        }
    }
    report.pass = report.anomalies.empty();
    return report;
}

LaurentPoly::LaurentPoly(std::vector<LaurentTerm> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const LaurentTerm& a, const LaurentTerm& b) {
                  return a.exp < b.exp;
              });
    for (LaurentTerm& t : terms) {
        if (!terms_.empty() && terms_.back().exp == t.exp) {
            terms_.back().coeff = terms_.back().coeff + t.coeff;
            if (terms_.back().coeff.is_zero()) terms_.pop_back();
        } else if (!t.coeff.is_zero()) {
            terms_.push_back(std::move(t));
        }
    }
}

long LaurentPoly::min_exp() const {
    if (terms_.empty()) throw ValueError("zero polynomial has no support");
    return terms_.front().exp;
}

long LaurentPoly::max_exp() const {
    if (terms_.empty()) throw ValueError("zero polynomial has no support");
    return terms_.back().exp;
}

Quadratic LaurentPoly::eval(const Quadratic& x) const {
    if (x.is_zero()) throw ValueError("Laurent evaluation needs x != 0");
    Quadratic out(0);
    for (const LaurentTerm& t : terms_) {
        out = out + t.coeff * x.pow(t.exp);
    }
    return out;
}

std::vector<Quadratic> LaurentPoly::coeff_point() const {
    std::vector<Quadratic> out(static_cast<std::size_t>(max_exp() - min_exp()) + 1,
                               Quadratic(0));
    for (const LaurentTerm& t : terms_) {
        out[static_cast<std::size_t>(t.exp - min_exp())] = t.coeff;
    }
    return out;
}

namespace {

// Order two exact values that may live in different quadratic fields by
// refining enclosures until they separate.
int cmp_cross_field(const Quadratic& x, const Quadratic& y) {
    if (x.is_rational() || y.is_rational() ||
        (x.d() == y.d())) {
        return x.cmp(y);
    }
    for (long p = 64; p <= kPrecisionCap; p *= 2) {
        Enclosure ex = x.enclose(p), ey = y.enclose(p);
        if (ex.hi() < ey.lo()) return -1;
        if (ey.hi() < ex.lo()) return 1;
    }
    throw PrecisionExhausted("cross-field comparison did not separate");
}

}  // namespace

GapSplitReport gap_split_check(const LaurentPoly& f, const Quadratic& beta,
                               long d0, long d1) {
    if (f.is_zero()) throw ValueError("gap check needs a nonzero polynomial");
    if (d0 >= d1) throw ValueError("need d0 < d1");
    if (beta.is_zero()) throw ValueError("beta must be nonzero");
    for (const LaurentTerm& t : f.terms()) {
        if (t.exp > d0 && t.exp < d1) {
            throw ValueError("a term lies strictly inside the gap");
        }
    }

    HeightValue hb = height({Quadratic(1), beta});
    if (hb.hpow.cmp(Quadratic(1)) == 0) {
        throw HeightOne("the base has height one");
    }

    GapSplitReport report;
    report.d0 = d0;
    report.d1 = d1;
    report.k = f.term_count() - 1;

    HeightValue hf = height(f.coeff_point());
    // gap_ok: H(beta)^(d1-d0) > k * H(f), both sides raised to a common
    // power so the comparison stays exact.
    unsigned db = hb.deg, df = hf.deg;
    unsigned lcm = (db == df) ? db : db * df;
    Quadratic left = hb.hpow.pow(static_cast<long>(d1 - d0) *
                                 static_cast<long>(lcm / db));
    Quadratic right = hf.hpow.pow(static_cast<long>(lcm / df)) *
                      Quadratic(mpq_pow_si(mpq_class(report.k), lcm));
    if (report.k == 0) right = Quadratic(0);
    report.gap_ok = cmp_cross_field(left, right) > 0;

    std::vector<LaurentTerm> low, high;
    for (const LaurentTerm& t : f.terms()) {
        (t.exp <= d0 ? low : high).push_back(t);
    }
    LaurentPoly g(low), h(high);
    report.f_zero = f.eval(beta).is_zero();
    report.g_zero = g.is_zero() || g.eval(beta).is_zero();
    report.h_zero = h.is_zero() || h.eval(beta).is_zero();
    report.pass = !(report.gap_ok && report.f_zero) ||
                  (report.g_zero && report.h_zero);
    return report;
}

}  // namespace hmlab
