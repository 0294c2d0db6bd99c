#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "hmlab/contfrac.hpp"
#include "hmlab/errors.hpp"
#include "hmlab/floorseq.hpp"
#include "hmlab/places.hpp"
#include "hmlab/relation.hpp"
#include "hmlab/report.hpp"
#include "hmlab/series.hpp"
#include "hmlab/witness.hpp"

namespace {

using namespace hmlab;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kUndecided = 3;

struct Range {
    std::size_t lo, hi;
};

Range parse_range(const std::string& text) {
    Window w = parse_window(text);
    if (w.lo < 1) throw ValueError("range indices start at 1");
    return {static_cast<std::size_t>(w.lo), static_cast<std::size_t>(w.hi)};
}

SelectionMode parse_mode(const std::string& text) {
    if (text == "bounded") return SelectionMode::Bounded;
    if (text == "unbounded") return SelectionMode::Unbounded;
    if (text == "auto") return SelectionMode::AutoQuadratic;
    throw ValueError("mode must be bounded, unbounded, or auto");
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// Shared flag bundle; each command registers only what it understands.
struct Flags {
    std::string theta, alpha, beta, poly, value;
    std::string window = "0:1000";
    std::string n_range = "2:4";
    std::string format = "json";
    std::string mode = "auto";
    std::string epsilon;
    std::string rho_override;
    long precision = 128;
    std::size_t n = 2;
    std::size_t count = 30;
    std::string best_approx;
};

int run_cf(const Flags& fl) {
    RealScalar theta = parse_scalar(fl.theta);
    ContinuedFraction cf = expand(theta, fl.count);
    ConvergentTable table(cf);

    Json bounds = Json::array();
    bool all_pass = true;
    for (std::size_t n = 0; n + 1 <= cf.last_index(); ++n) {
        ApproxBoundsReport r = check_approx_bounds(cf, table, n);
        all_pass = all_pass && r.pass;
        bounds.push_back(json_of(r));
    }

    Json result;
    result["expansion"] = json_of(cf);
    result["table"] = json_of(table);
    result["bounds"] = std::move(bounds);
    if (!fl.mode.empty() && fl.mode != "none") {
        try {
            IndexSelection sel =
                select_indices(cf, parse_mode(fl.mode), std::min<std::size_t>(
                                                            5, fl.count / 2));
            result["selection"] = json_of(sel);
        } catch (const InsufficientQuotients&) {
            result["selection"] = nullptr;
        }
    }
    if (!fl.best_approx.empty()) {
        mpz_class Q(fl.best_approx);
        BestApproxReport r = verify_best_approx(theta, table, Q);
        all_pass = all_pass && r.pass;
        result["best_approx"] = json_of(r);
    }
    result["pass"] = all_pass;

    if (fl.format == "csv") {
        std::cout << table_csv(table);
    } else {
        emit(envelope("cf", Json{{"theta", fl.theta}, {"n", fl.count}},
                      result));
    }
    return all_pass ? kPass : kCheckFailed;
}

int run_seq(const Flags& fl) {
    IntPolynomial f = parse_poly(fl.poly);
    RealScalar theta = parse_scalar(fl.theta);
    RealScalar alpha = parse_scalar(fl.alpha);
    Window w = parse_window(fl.window);
    std::vector<mpz_class> u = u_seq(f, theta, alpha, w);

    std::vector<std::pair<long, mpz_class>> rows;
    for (std::size_t i = 0; i < u.size(); ++i) {
        rows.emplace_back(w.lo + static_cast<long>(i), u[i]);
    }
    if (fl.format == "csv") {
        std::cout << useq_csv(rows);
    } else {
        Json values = Json::array();
        for (const auto& [m, um] : rows) {
            values.push_back({{"m", m}, {"u", str_of(um)}});
        }
        Json result;
        result["values"] = std::move(values);
        emit(envelope("seq",
                      Json{{"poly", fl.poly},
                           {"theta", fl.theta},
                           {"alpha", fl.alpha},
                           {"window", fl.window}},
                      result));
    }
    return kPass;
}

int run_sparsity(const Flags& fl) {
    IntPolynomial f = parse_poly(fl.poly);
    RealScalar theta = parse_scalar(fl.theta);
    RealScalar alpha = parse_scalar(fl.alpha);
    Window w = parse_window(fl.window);
    unsigned sigma = static_cast<unsigned>(f.degree()) + 1;

    ContinuedFraction cf = expand(theta, fl.n);
    ConvergentTable table(cf);
    DifferenceScheme scheme = DifferenceScheme::from_table(sigma, table);
    FloorSeq fs(f, theta, alpha);
    SparsitySlice slice = w_scan(scheme, fs, fl.n, w);

    if (fl.format == "csv") {
        std::cout << slice_csv(slice);
    } else {
        emit(envelope("sparsity",
                      Json{{"poly", fl.poly},
                           {"theta", fl.theta},
                           {"alpha", fl.alpha},
                           {"n", fl.n},
                           {"window", fl.window}},
                      json_of(slice)));
    }
    return kPass;
}

int run_condition_star(const Flags& fl) {
    IntPolynomial f = parse_poly(fl.poly);
    RealScalar theta = parse_scalar(fl.theta);
    RealScalar alpha = parse_scalar(fl.alpha);
    Window w = parse_window(fl.window);
    Range range = parse_range(fl.n_range);
    unsigned sigma = static_cast<unsigned>(f.degree()) + 1;

    ContinuedFraction cf = expand(theta, 2 * range.hi + 1);
    ConvergentTable table(cf);
    DifferenceScheme scheme = DifferenceScheme::from_table(sigma, table);
    FloorSeq fs(f, theta, alpha);

    mpq_class epsilon;
    if (!fl.epsilon.empty()) {
        epsilon = parse_rational(fl.epsilon);
    } else {
        IndexSelection sel =
            select_indices(cf, parse_mode(fl.mode), range.hi);
        epsilon = sel.epsilon;
    }

    unsigned c0 = sigma >= 2 ? sigma - 2 : 0;
    std::vector<SparsitySlice> slices;
    Json per_n = Json::array();
    bool fail = false;
    bool undecided = false;
    for (std::size_t n = range.lo; n <= range.hi; ++n) {
        SparsitySlice slice = w_scan(scheme, fs, n, w);
        GapReport gap = gap_check(slice, epsilon, sigma);
        ConsistencyReport cons = check_case_consistency(scheme, fs, slice);
        Json row;
        row["n"] = n;
        row["slice"] = json_of(slice);
        row["gap"] = json_of(gap);
        row["consistency"] = json_of(cons);
        if (theta.kind() != ScalarKind::stream) {
            DioReport dio = dio_check(theta, slice.r, epsilon, sigma);
            row["dio"] = json_of(dio);
            fail = fail || !dio.pass;
        }
        fail = fail || !gap.pass || !cons.mismatches.empty();
        undecided = undecided || !cons.undecided.empty();
        per_n.push_back(std::move(row));
        slices.push_back(std::move(slice));
    }
    VariationReport var = variation_fit(slices, c0);
    BoundaryFitReport bfit = boundary_fit(slices, sigma);
    fail = fail || !var.pass || !bfit.pass;

    Json result;
    result["epsilon"] = str_of(epsilon);
    result["c0"] = c0;
    result["per_n"] = std::move(per_n);
    result["variation"] = json_of(var);
    result["boundary_fit"] = json_of(bfit);
    result["pass"] = !fail && !undecided;

    if (fl.format == "csv") {
        std::cout << "n,r,entries,min_gap,gap_pass,consistency_pass\n";
        for (std::size_t i = 0; i < slices.size(); ++i) {
            const SparsitySlice& s = slices[i];
            const Json& row = result["per_n"][i];
            std::cout << s.n << "," << s.r << "," << s.entries.size() << ","
                      << row["gap"]["min_gap"] << ","
                      << (row["gap"]["pass"].get<bool>() ? 1 : 0) << ","
                      << (row["consistency"]["pass"].get<bool>() ? 1 : 0)
                      << "\n";
        }
    } else {
        emit(envelope("condition-star",
                      Json{{"poly", fl.poly},
                           {"theta", fl.theta},
                           {"alpha", fl.alpha},
                           {"n_range", fl.n_range},
                           {"window", fl.window},
                           {"epsilon", str_of(epsilon)}},
                      result));
    }
    if (undecided) return kUndecided;
    return fail ? kCheckFailed : kPass;
}

int run_witness(const Flags& fl) {
    IntPolynomial f = parse_poly(fl.poly);
    RealScalar theta = parse_scalar(fl.theta);
    RealScalar alpha = parse_scalar(fl.alpha);
    Quadratic beta = parse_field(fl.beta);
    Window w = parse_window(fl.window);
    Range range = parse_range(fl.n_range);
    unsigned sigma = static_cast<unsigned>(f.degree()) + 1;
    mpq_class epsilon =
        fl.epsilon.empty() ? mpq_class(1, 10) : parse_rational(fl.epsilon);

    PlaceSet S = build_places(beta);
    ContinuedFraction cf = expand(theta, range.hi);
    ConvergentTable table(cf);
    DifferenceScheme scheme = DifferenceScheme::from_table(sigma, table);
    FloorSeq fs(f, theta, alpha);

    std::vector<SparsitySlice> slices;
    for (std::size_t n = range.lo; n <= range.hi; ++n) {
        slices.push_back(w_scan(scheme, fs, n, w));
    }
    std::optional<mpq_class> override_rho;
    if (!fl.rho_override.empty()) {
        override_rho = parse_rational(fl.rho_override);
    }
    WitnessParams params = witness_params(sigma, S, slices, override_rho);

    SeriesSpec spec(f, theta, alpha, beta);
    SeriesFn series_at = [&spec](long p) { return eval_series(spec, p).value; };

    std::vector<WitnessVector> vectors;
    std::vector<LinFormReport> forms;
    Json vec_json = Json::array(), form_json = Json::array();
    bool consistent = true;
    for (const SparsitySlice& slice : slices) {
        if (slice.n < params.n0) continue;
        WitnessVector v = build_a(slice, scheme, params, beta, fs, S);
        LinFormReport form =
            eval_L(v, scheme, fs, beta, series_at, fl.precision);
        consistent = consistent && form.consistent;
        vec_json.push_back(json_of(v));
        form_json.push_back(json_of(form));
        vectors.push_back(std::move(v));
        forms.push_back(std::move(form));
    }
    if (vectors.empty()) {
        throw WindowTooSmall("no index at or past n0 in the requested range");
    }

    SubspaceReport sub = subspace_report(vectors, forms, S, params, epsilon);
    Json ratio_json = nullptr;
    bool ratio_ok = true;
    if (vectors.size() >= 2) {
        RatioDecayReport ratio = ratio_decay(vectors, beta);
        ratio_ok = ratio.pass;
        ratio_json = json_of(ratio);
    }

    bool pass = sub.pass && consistent && ratio_ok;
    Json result;
    result["places"] = json_of(S);
    result["params"] = json_of(params);
    result["vectors"] = std::move(vec_json);
    result["forms"] = std::move(form_json);
    result["subspace"] = json_of(sub);
    result["ratio_decay"] = std::move(ratio_json);
    result["pass"] = pass;

    if (fl.format == "csv") {
        std::cout << subspace_csv(sub);
    } else {
        emit(envelope("witness",
                      Json{{"poly", fl.poly},
                           {"theta", fl.theta},
                           {"alpha", fl.alpha},
                           {"beta", fl.beta},
                           {"n_range", fl.n_range},
                           {"window", fl.window},
                           {"epsilon", str_of(epsilon)},
                           {"precision", fl.precision},
                           {"rho_override",
                            fl.rho_override.empty() ? Json(nullptr)
                                                    : Json(fl.rho_override)}},
                      result));
    }
    return pass ? kPass : kCheckFailed;
}

int run_eval(const Flags& fl) {
    IntPolynomial f = parse_poly(fl.poly);
    SeriesSpec spec(f, parse_scalar(fl.theta), parse_scalar(fl.alpha),
                    parse_field(fl.beta));
    SeriesValue v = eval_series(spec, fl.precision);
    if (fl.format == "csv") {
        std::cout << "lo,hi,tail_m\n"
                  << v.value.lo().str() << "," << v.value.hi().str() << ","
                  << v.tail_m << "\n";
    } else {
        emit(envelope("eval",
                      Json{{"poly", fl.poly},
                           {"theta", fl.theta},
                           {"alpha", fl.alpha},
                           {"beta", fl.beta},
                           {"precision", fl.precision}},
                      json_of(v)));
    }
    return kPass;
}

int run_relation(const Flags& fl, unsigned degree, const std::string& height) {
    Enclosure x;
    Json params;
    if (!fl.value.empty()) {
        RealScalar v = parse_scalar(fl.value);
        x = v.refine(fl.precision);
        params = Json{{"value", fl.value}};
    } else {
        IntPolynomial f = parse_poly(fl.poly);
        SeriesSpec spec(f, parse_scalar(fl.theta), parse_scalar(fl.alpha),
                        parse_field(fl.beta));
        x = eval_series(spec, fl.precision).value;
        params = Json{{"poly", fl.poly},
                      {"theta", fl.theta},
                      {"alpha", fl.alpha},
                      {"beta", fl.beta}};
    }
    params["degree"] = degree;
    params["height"] = height;
    params["precision"] = fl.precision;

    RelationReport r = integer_relation(x, degree, mpz_class(height),
                                        fl.precision);
    if (fl.format == "csv") {
        std::cout << "outcome,coeffs\n"
                  << (r.outcome == RelationOutcome::RelationFound
                          ? "relation_found"
                          : "no_relation_found")
                  << ",\"";
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
            if (i) std::cout << " ";
            std::cout << r.coeffs[i];
        }
        std::cout << "\"\n";
    } else {
        emit(envelope("relation", std::move(params), json_of(r)));
    }
    return kPass;
}

int run_repro_example1(const Flags& fl) {
    const std::string theta_s = "quad:1,-1/2,2";
    IntPolynomial f = parse_poly("0,1");
    RealScalar theta = parse_scalar(theta_s);
    RealScalar alpha = parse_scalar(theta_s);
    Window w{0, 70};

    ContinuedFraction cf = expand(theta, 4);
    ConvergentTable table(cf);
    DifferenceScheme scheme = DifferenceScheme::from_table(2, table);
    FloorSeq fs(f, theta, alpha);

    const std::vector<mpz_class> expected_r = {1, 3, 7, 17, 41};
    const std::vector<std::vector<long>> expected_sets = {
        {9, 16, 26, 33, 50, 57, 67}, {23, 40, 64}, {57}};

    bool pass = true;
    Json rows = Json::array();
    for (std::size_t i = 0; i < expected_r.size(); ++i) {
        pass = pass && (table.row(i).q == expected_r[i]);
    }
    for (std::size_t n = 2; n <= 4; ++n) {
        SparsitySlice slice = w_scan(scheme, fs, n, w);
        std::vector<long> got;
        for (const auto& [m, wv] : slice.entries) got.push_back(m);
        bool match = (got == expected_sets[n - 2]);
        if (n == 2) {
            bool w_ok = false;
            for (const auto& [m, wv] : slice.entries) {
                if (m == 9) w_ok = (wv == 1);
            }
            match = match && w_ok;
        }
        pass = pass && match;
        Json row;
        row["n"] = n;
        row["r"] = str_of(slice.r);
        row["positions"] = got;
        row["expected"] = expected_sets[n - 2];
        row["match"] = match;
        rows.push_back(std::move(row));
    }

    Json result;
    result["theta"] = theta_s;
    result["alpha"] = theta_s;
    result["poly"] = "0,1";
    result["window"] = "0:70";
    result["slices"] = std::move(rows);
    result["pass"] = pass;
    if (fl.format == "csv") {
        std::cout << "n,match\n";
        for (const auto& row : result["slices"]) {
            std::cout << row["n"] << "," << (row["match"].get<bool>() ? 1 : 0)
                      << "\n";
        }
    } else {
        emit(envelope("repro-example1", Json::object(), result));
    }
    return pass ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact laboratory for sturmian power series arithmetic"};
    app.require_subcommand(1);
    Flags fl;
    unsigned degree = 2;
    std::string height = "100";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--precision", fl.precision, "working precision bits");
        cmd->add_option("--format", fl.format, "json or csv");
    };

    CLI::App* cf = app.add_subcommand("cf", "continued fraction expansion");
    cf->add_option("--theta", fl.theta)->required();
    cf->add_option("--n", fl.count, "number of quotients");
    cf->add_option("--mode", fl.mode, "index selection mode");
    cf->add_option("--best-approx", fl.best_approx, "denominator cap Q");
    add_common(cf);

    CLI::App* seq = app.add_subcommand("seq", "floor sequence values");
    seq->add_option("--poly", fl.poly)->required();
    seq->add_option("--theta", fl.theta)->required();
    seq->add_option("--alpha", fl.alpha)->required();
    seq->add_option("--window", fl.window);
    add_common(seq);

    CLI::App* sp = app.add_subcommand("sparsity", "nonzero w positions");
    sp->add_option("--poly", fl.poly)->required();
    sp->add_option("--theta", fl.theta)->required();
    sp->add_option("--alpha", fl.alpha)->required();
    sp->add_option("--n", fl.n)->required();
    sp->add_option("--window", fl.window);
    add_common(sp);

    CLI::App* cs = app.add_subcommand("condition-star",
                                      "gap and variation checks");
    cs->add_option("--poly", fl.poly)->required();
    cs->add_option("--theta", fl.theta)->required();
    cs->add_option("--alpha", fl.alpha)->required();
    cs->add_option("--n-range", fl.n_range);
    cs->add_option("--window", fl.window);
    cs->add_option("--epsilon", fl.epsilon);
    cs->add_option("--mode", fl.mode);
    add_common(cs);

    CLI::App* wi = app.add_subcommand("witness", "candidate vector chain");
    wi->add_option("--poly", fl.poly)->required();
    wi->add_option("--theta", fl.theta)->required();
    wi->add_option("--alpha", fl.alpha)->required();
    wi->add_option("--beta", fl.beta)->required();
    wi->add_option("--n-range", fl.n_range);
    wi->add_option("--window", fl.window);
    wi->add_option("--epsilon", fl.epsilon);
    wi->add_option("--rho-override", fl.rho_override);
    add_common(wi);

    CLI::App* ev = app.add_subcommand("eval", "series value enclosure");
    ev->add_option("--poly", fl.poly)->required();
    ev->add_option("--theta", fl.theta)->required();
    ev->add_option("--alpha", fl.alpha)->required();
    ev->add_option("--beta", fl.beta)->required();
    add_common(ev);

    CLI::App* re = app.add_subcommand("relation", "integer relation search");
    re->add_option("--value", fl.value);
    re->add_option("--poly", fl.poly);
    re->add_option("--theta", fl.theta);
    re->add_option("--alpha", fl.alpha);
    re->add_option("--beta", fl.beta);
    re->add_option("--degree", degree);
    re->add_option("--height", height);
    add_common(re);

    CLI::App* rp = app.add_subcommand("repro-example1",
                                      "rerun the worked example");
    add_common(rp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (app.got_subcommand(cf)) return run_cf(fl);
        if (app.got_subcommand(seq)) return run_seq(fl);
        if (app.got_subcommand(sp)) return run_sparsity(fl);
        if (app.got_subcommand(cs)) return run_condition_star(fl);
        if (app.got_subcommand(wi)) return run_witness(fl);
        if (app.got_subcommand(ev)) return run_eval(fl);
        if (app.got_subcommand(re)) {
            if (fl.value.empty() &&
                (fl.poly.empty() || fl.theta.empty() || fl.alpha.empty() ||
                 fl.beta.empty())) {
                throw ValueError(
                    "relation needs --value or a full series spec");
            }
            return run_relation(fl, degree, height);
        }
        if (app.got_subcommand(rp)) return run_repro_example1(fl);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kUndecided;
    } catch (const PrecisionTooLow& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kUndecided;
    } catch (const ValueError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        // Domain errors: unsupported fields, thin windows, short expansions.
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
