#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmlab/floorseq.hpp"
#include "hmlab/places.hpp"

namespace hmlab {

// Threshold rho = 2*sigma*|S|*deg * log(kappa)/log|beta|.  Comparisons
// against it are decided by cross-powering, never through floating logs;
// `exact` is filled when the two logarithms are commensurable.
struct RhoValue {
    unsigned sigma = 0;
    std::size_t s_size = 0;
    unsigned deg = 1;
    mpq_class kappa;
    Quadratic beta_abs;
    std::optional<mpq_class> exact;
    std::optional<mpq_class> override_value;
    double approx = 0.0;

    // m > rho * r
    bool exceeds(const mpz_class& m, const mpz_class& r) const;
    // m >= rho * r
    bool at_least(const mpz_class& m, const mpz_class& r) const;
};

RhoValue rho_value(unsigned sigma, const PlaceSet& S);
RhoValue rho_with_override(unsigned sigma, const PlaceSet& S,
                           const mpq_class& value);

// Per-index data derived from the sparsity slices: delta_n jumps past
// rho*r_n, delta is their maximum from n0 on, and s_n cuts just before
// position delta+1.
struct WitnessParams {
    RhoValue rho;
    unsigned delta = 0;
    std::size_t n0 = 0;
    std::map<std::size_t, long> s_n;
    std::map<std::size_t, std::vector<long>> positions;  // first delta+1 entries
    std::map<std::size_t, unsigned> delta_n;
};

WitnessParams witness_params(unsigned sigma, const PlaceSet& S,
                             const std::vector<SparsitySlice>& slices,
                             const std::optional<mpq_class>& rho_override =
                                 std::nullopt);

// Candidate vector a_n: powers of beta, the head compensation term, and one
// scaled tail coefficient per retained position.  sigma + delta + 2 entries.
struct WitnessVector {
    std::size_t n = 0;
    mpz_class r;
    unsigned sigma = 0;
    unsigned delta = 0;
    long s_n = 0;
    std::vector<long> positions;   // m_{n,1} .. m_{n,delta}
    std::vector<mpz_class> w_at;   // w values at those positions
    std::vector<Quadratic> a;
};

WitnessVector build_a(const SparsitySlice& slice, const DifferenceScheme& scheme,
                      const WitnessParams& params, const Quadratic& beta,
                      const FloorSeq& fs, const PlaceSet& S);

// Certified evaluator for the series value at a requested accuracy.
using SeriesFn = std::function<Enclosure(long)>;

// L(a_n) computed two independent ways: through the defining linear form
// with the series enclosure plugged in, and through the tail sum past s_n
// with a geometric remainder cap.  Both enclose the same number, so a
// consistent run must intersect.
struct LinFormReport {
    std::size_t n = 0;
    Enclosure direct;
    Enclosure tail;
    Enclosure combined;  // intersection
    long horizon = 0;    // last index summed into the tail route
    bool consistent = false;
};

LinFormReport eval_L(const WitnessVector& v, const DifferenceScheme& scheme,
                     const FloorSeq& fs, const Quadratic& beta,
                     const SeriesFn& series_at, long p);

struct SubspaceRow {
    std::size_t n = 0;
    mpz_class r;
    long s_n = 0;
    bool s_ge_rho_r = false;
    bool kappa_power_ok = false;   // kappa^(sigma r |S|) <= |beta|^(s/(2 deg))
    Enclosure lhs_pow;             // full place product, deg-th power
    Quadratic height_pow;          // H(a_n)^deg, exact
    double lhs_log2 = 0.0;
    double height_log2 = 0.0;
    double epsilon_realized = 0.0;
    bool epsilon_ok = false;       // lhs <= H^(-epsilon), decided exactly
};

struct SubspaceReport {
    mpq_class epsilon;
    std::vector<SubspaceRow> rows;
    bool decay_ok = false;  // lhs bounds strictly decreasing along n
    bool pass = false;
};

SubspaceReport subspace_report(const std::vector<WitnessVector>& vectors,
                               const std::vector<LinFormReport>& forms,
                               const PlaceSet& S, const WitnessParams& params,
                               const mpq_class& epsilon);

// Successive-coordinate ratios |a_(sigma+1+j) / a_(sigma+1+i)| must shrink
// as n grows; violations are listed rather than silently dropped.
struct RatioDecayReport {
    std::vector<std::string> anomalies;
    std::vector<std::vector<double>> log2_ratios;  // per n, per adjacent pair
    bool pass = false;
};

RatioDecayReport ratio_decay(const std::vector<WitnessVector>& vectors,
                             const Quadratic& beta);

// Laurent polynomial over the working field, sparse, exponents may be
// negative.
struct LaurentTerm {
    long exp;
    Quadratic coeff;
};

class LaurentPoly {
  public:
    explicit LaurentPoly(std::vector<LaurentTerm> terms);

    const std::vector<LaurentTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    long min_exp() const;
    long max_exp() const;
    Quadratic eval(const Quadratic& x) const;
    // Dense projective coefficient vector from min_exp to max_exp.
    std::vector<Quadratic> coeff_point() const;

  private:
    std::vector<LaurentTerm> terms_;
};

// Degree-gap splitting criterion: when the gap d1 - d0 beats
// log(k*H(f))/log(H(beta)) and f(beta) = 0, both halves vanish at beta.
// The checker validates the hypothesis exactly and reports whether the
// conclusion holds on this instance.
struct GapSplitReport {
    long d0 = 0;
    long d1 = 0;
    std::size_t k = 0;  // term count minus one
    bool gap_ok = false;
    bool f_zero = false;
    bool g_zero = false;
    bool h_zero = false;
    bool pass = false;  // the implication holds as stated
};

GapSplitReport gap_split_check(const LaurentPoly& f, const Quadratic& beta,
                               long d0, long d1);

}  // namespace hmlab
