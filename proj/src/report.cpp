#include "hmlab/report.hpp"

#include <sstream>

namespace hmlab {

std::string str_of(const mpz_class& z) { return z.get_str(); }

std::string str_of(const mpq_class& q) { return q.get_str(); }

std::string str_of(const Quadratic& x) { return x.str(); }

Json json_of(const Enclosure& e) {
    Json j;
    j["lo"] = e.lo().str();
    j["hi"] = e.hi().str();
    j["log2_width"] = approx_log2(Enclosure::point(e.width()));
    return j;
}

Json json_of(const ContinuedFraction& cf) {
    Json j;
    Json a = Json::array();
    for (const mpz_class& q : cf.quotients()) a.push_back(str_of(q));
    j["quotients"] = std::move(a);
    if (cf.periodic_tail()) {
        j["periodic_tail"] = {{"start", cf.periodic_tail()->start},
                              {"period", cf.periodic_tail()->period}};
    } else {
        j["periodic_tail"] = nullptr;
    }
    return j;
}

Json json_of(const ConvergentTable& table) {
    Json rows = Json::array();
    for (const ConvergentRow& r : table.rows()) {
        rows.push_back({{"n", r.n},
                        {"a", str_of(r.a)},
                        {"p", str_of(r.p)},
                        {"q", str_of(r.q)}});
    }
    return rows;
}

Json json_of(const ApproxBoundsReport& r) {
    Json j;
    j["n"] = r.n;
    j["lower"] = str_of(r.lower);
    j["upper"] = str_of(r.upper);
    j["value"] = json_of(r.value);
    j["pass"] = r.pass;
    return j;
}

Json json_of(const BestApproxReport& r) {
    Json j;
    j["Q"] = str_of(r.Q);
    Json b = Json::array(), e = Json::array();
    for (const mpz_class& q : r.best_q) b.push_back(str_of(q));
    for (const mpz_class& q : r.expected_q) e.push_back(str_of(q));
    j["best_q"] = std::move(b);
    j["expected_q"] = std::move(e);
    j["pass"] = r.pass;
    return j;
}

Json json_of(const IndexSelection& sel) {
    Json j;
    j["mode"] = sel.mode == SelectionMode::Bounded ? "bounded" : "unbounded";
    j["parity"] = sel.parity == Parity::Even ? "even" : "odd";
    j["indices"] = sel.indices;
    Json s = Json::array();
    for (const mpz_class& r : sel.shifts) s.push_back(str_of(r));
    j["shifts"] = std::move(s);
    j["epsilon"] = str_of(sel.epsilon);
    return j;
}

Json json_of(const SparsitySlice& slice) {
    Json j;
    j["n"] = slice.n;
    j["r"] = str_of(slice.r);
    j["window"] = {{"lo", slice.window.lo}, {"hi", slice.window.hi}};
    Json entries = Json::array();
    for (const auto& [m, w] : slice.entries) {
        entries.push_back({{"m", m}, {"w", str_of(w)}});
    }
    j["entries"] = std::move(entries);
    j["count"] = slice.entries.size();
    if (slice.mu) {
        j["mu"] = *slice.mu;
    } else {
        j["mu"] = nullptr;
    }
    return j;
}

Json json_of(const GapReport& r) {
    Json j;
    j["min_gap"] = r.min_gap;
    j["bound"] = str_of(r.bound);
    j["pass"] = r.pass;
    return j;
}

Json json_of(const VariationReport& r) {
    Json j;
    j["c_max"] = str_of(r.c_max);
    Json per = Json::array();
    for (const auto& [n, c] : r.per_slice) {
        per.push_back({{"n", n}, {"c", str_of(c)}});
    }
    j["per_slice"] = std::move(per);
    j["pass"] = r.pass;
    return j;
}

Json json_of(const ConsistencyReport& r) {
    Json j;
    j["checked"] = r.checked;
    j["mismatches"] = r.mismatches;
    j["undecided"] = r.undecided;
    j["pass"] = r.pass;
    return j;
}

Json json_of(const BoundaryFitReport& r) {
    Json j;
    j["M"] = r.M;
    j["count"] = r.count;
    j["eps1"] = str_of(r.eps1);
    j["eps2"] = str_of(r.eps2);
    j["pass"] = r.pass;
    return j;
}

Json json_of(const DioReport& r) {
    Json j;
    j["r"] = str_of(r.r);
    j["q_bound"] = str_of(r.q_bound);
    Json q = Json::array(), v = Json::array();
    for (const mpz_class& x : r.qualifying) q.push_back(str_of(x));
    for (const mpz_class& x : r.violations) v.push_back(str_of(x));
    j["qualifying"] = std::move(q);
    j["violations"] = std::move(v);
    j["pass"] = r.pass;
    return j;
}

namespace {

const char* splitting_name(PrimeSplitting s) {
    switch (s) {
        case PrimeSplitting::Rational: return "rational";
        case PrimeSplitting::Split: return "split";
        case PrimeSplitting::Inert: return "inert";
        case PrimeSplitting::Ramified: return "ramified";
    }
    return "?";
}

}  // namespace

Json json_of(const PlaceSet& S) {
    Json j;
    j["field_d"] = str_of(S.field.d());
    j["degree"] = S.field.degree();
    j["beta"] = str_of(S.beta);
    Json fin = Json::array();
    for (const FinitePlace& pl : S.finite) {
        Json f;
        f["p"] = str_of(pl.p);
        f["splitting"] = splitting_name(pl.splitting);
        if (pl.pi) f["pi"] = str_of(*pl.pi);
        f["conj_index"] = pl.conj_index;
        f["residue_norm"] = str_of(pl.residue_norm);
        f["ord_beta"] = pl.ord_beta;
        fin.push_back(std::move(f));
    }
    j["finite"] = std::move(fin);
    j["arch_count"] = S.arch_count();
    j["size"] = S.size();
    j["kappa"] = str_of(S.kappa);
    return j;
}

Json json_of(const RhoValue& rho) {
    Json j;
    j["sigma"] = rho.sigma;
    j["s_size"] = rho.s_size;
    j["degree"] = rho.deg;
    j["kappa"] = str_of(rho.kappa);
    j["exact"] = rho.exact ? Json(str_of(*rho.exact)) : Json(nullptr);
    j["override"] =
        rho.override_value ? Json(str_of(*rho.override_value)) : Json(nullptr);
    j["approx"] = rho.approx;
    return j;
}

Json json_of(const WitnessParams& params) {
    Json j;
    j["rho"] = json_of(params.rho);
    j["delta"] = params.delta;
    j["n0"] = params.n0;
    Json rows = Json::array();
    for (const auto& [n, s] : params.s_n) {
        Json row;
        row["n"] = n;
        row["delta_n"] = params.delta_n.at(n);
        row["s_n"] = s;
        row["positions"] = params.positions.at(n);
        rows.push_back(std::move(row));
    }
    j["per_index"] = std::move(rows);
    return j;
}

Json json_of(const WitnessVector& v) {
    Json j;
    j["n"] = v.n;
    j["r"] = str_of(v.r);
    j["sigma"] = v.sigma;
    j["delta"] = v.delta;
    j["s_n"] = v.s_n;
    j["positions"] = v.positions;
    Json w = Json::array();
    for (const mpz_class& x : v.w_at) w.push_back(str_of(x));
    j["w_at"] = std::move(w);
    Json a = Json::array();
    for (const Quadratic& x : v.a) a.push_back(str_of(x));
    j["a"] = std::move(a);
    return j;
}

Json json_of(const LinFormReport& r) {
    Json j;
    j["n"] = r.n;
    j["direct"] = json_of(r.direct);
    j["tail"] = json_of(r.tail);
    j["combined"] = json_of(r.combined);
    j["horizon"] = r.horizon;
    j["consistent"] = r.consistent;
    return j;
}

Json json_of(const SubspaceReport& r) {
    Json j;
    j["epsilon"] = str_of(r.epsilon);
    Json rows = Json::array();
    for (const SubspaceRow& row : r.rows) {
        Json x;
        x["n"] = row.n;
        x["r"] = str_of(row.r);
        x["s_n"] = row.s_n;
        x["s_ge_rho_r"] = row.s_ge_rho_r;
        x["kappa_power_ok"] = row.kappa_power_ok;
        x["lhs_log2"] = row.lhs_log2;
        x["height_log2"] = row.height_log2;
        x["epsilon_realized"] = row.epsilon_realized;
        x["epsilon_ok"] = row.epsilon_ok;
        rows.push_back(std::move(x));
    }
    j["rows"] = std::move(rows);
    j["decay_ok"] = r.decay_ok;
    j["pass"] = r.pass;
    return j;
}

Json json_of(const RatioDecayReport& r) {
    Json j;
    j["log2_ratios"] = r.log2_ratios;
    j["anomalies"] = r.anomalies;
    j["pass"] = r.pass;
    return j;
}

Json json_of(const GapSplitReport& r) {
    Json j;
    j["d0"] = r.d0;
    j["d1"] = r.d1;
    j["k"] = r.k;
    j["gap_ok"] = r.gap_ok;
    j["f_zero"] = r.f_zero;
    j["g_zero"] = r.g_zero;
    j["h_zero"] = r.h_zero;
    j["pass"] = r.pass;
    return j;
}

Json json_of(const SeriesValue& v) {
    Json j;
    j["value"] = json_of(v.value);
    j["tail_m"] = v.tail_m;
    return j;
}

Json json_of(const RelationReport& r) {
    Json j;
    j["degree"] = r.degree;
    j["height"] = str_of(r.height);
    j["precision"] = r.precision;
    j["outcome"] = r.outcome == RelationOutcome::RelationFound
                       ? "relation_found"
                       : "no_relation_found";
    if (r.outcome == RelationOutcome::RelationFound) {
        Json c = Json::array();
        for (const mpz_class& v : r.coeffs) c.push_back(str_of(v));
        j["coeffs"] = std::move(c);
        j["residual"] = json_of(r.residual);
    }
    j["threshold"] = str_of(r.threshold);
    j["exclusion_bound_sq"] = str_of(r.exclusion_bound_sq);
    j["shortest_norm_sq"] = str_of(r.shortest_norm_sq);
    return j;
}

Json envelope(const std::string& command, Json params, Json result) {
    Json j;
    j["schema"] = kSchemaTag;
    j["command"] = command;
    j["params"] = std::move(params);
    j["result"] = std::move(result);
    return j;
}

std::string table_csv(const ConvergentTable& table) {
    std::ostringstream os;
    os << "n,a,p,q\n";
    for (const ConvergentRow& r : table.rows()) {
        os << r.n << "," << r.a << "," << r.p << "," << r.q << "\n";
    }
    return os.str();
}

std::string slice_csv(const SparsitySlice& slice) {
    std::ostringstream os;
    os << "m,w\n";
    for (const auto& [m, w] : slice.entries) os << m << "," << w << "\n";
    return os.str();
}

std::string useq_csv(const std::vector<std::pair<long, mpz_class>>& values) {
    std::ostringstream os;
    os << "m,u\n";
    for (const auto& [m, u] : values) os << m << "," << u << "\n";
    return os.str();
}

std::string subspace_csv(const SubspaceReport& r) {
    std::ostringstream os;
    os << "n,r,s_n,lhs_log2,height_log2,epsilon_realized,epsilon_ok\n";
    for (const SubspaceRow& row : r.rows) {
        os << row.n << "," << row.r << "," << row.s_n << "," << row.lhs_log2
           << "," << row.height_log2 << "," << row.epsilon_realized << ","
           << (row.epsilon_ok ? 1 : 0) << "\n";
    }
    return os.str();
}

}  // namespace hmlab
