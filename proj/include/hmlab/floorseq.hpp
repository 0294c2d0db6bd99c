#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hmlab/contfrac.hpp"
#include "hmlab/polynomial.hpp"
#include "hmlab/scalar.hpp"

namespace hmlab {

// Inclusive scan window [lo, hi] of sequence positions.
struct Window {
    long lo = 0;
    long hi = 1000;
};

// "lo:hi" as used by the CLI --window flag.
Window parse_window(const std::string& text);

// Caches the floors A_m = floor(m*theta + alpha) and values u_m = f(A_m).
// Exact scalars use an incremental field accumulator, so a full window
// costs one addition and one floor per position.
class FloorSeq {
  public:
    FloorSeq(IntPolynomial f, RealScalar theta, RealScalar alpha,
             long p_max = kPrecisionCap);

    const mpz_class& u(std::size_t m) const;
    const mpz_class& floor_at(std::size_t m) const;
    const IntPolynomial& poly() const { return f_; }
    const RealScalar& theta() const { return theta_; }
    const RealScalar& alpha() const { return alpha_; }
    long precision_cap() const { return p_max_; }

  private:
    void extend(std::size_t m) const;
    IntPolynomial f_;
    RealScalar theta_, alpha_;
    long p_max_;
    mutable std::vector<mpz_class> floors_, values_;
    mutable std::optional<Quadratic> acc_;  // exact m*theta+alpha, if exact
};

std::vector<mpz_class> u_seq(const IntPolynomial& f, const RealScalar& theta,
                             const RealScalar& alpha, Window w,
                             long p_max = kPrecisionCap);

// Weights b_k = (-1)^k C(sigma,k) plus the shift sequence r_n.  Shifts may
// come from a whole convergent table (r_n = q_n) or from an index
// selection (r_n = q_{l_n}); first_index says what n the first shift has.
class DifferenceScheme {
  public:
    DifferenceScheme(unsigned sigma, std::vector<mpz_class> shifts,
                     std::size_t first_index);
    static DifferenceScheme from_table(unsigned sigma,
                                       const ConvergentTable& table);
    static DifferenceScheme from_selection(unsigned sigma,
                                           const IndexSelection& sel);

    unsigned sigma() const { return sigma_; }
    const std::vector<mpz_class>& weights() const { return weights_; }
    const mpz_class& shift(std::size_t n) const;
    std::size_t first_index() const { return first_; }
    std::size_t last_index() const { return first_ + shifts_.size() - 1; }

  private:
    unsigned sigma_;
    std::vector<mpz_class> weights_;
    std::vector<mpz_class> shifts_;
    std::size_t first_;
};

// Exact nonzero set of w_{n,m} = sum_i b_i u_{m+i r_n} over a window.
struct SparsitySlice {
    std::size_t n;
    mpz_class r;
    Window window;
    std::vector<std::pair<long, mpz_class>> entries;  // (m, w), w != 0
    std::optional<long> mu;  // min gap between consecutive entries
};

SparsitySlice w_scan(const DifferenceScheme& scheme, const FloorSeq& fs,
                     std::size_t n, Window w);

struct GapReport {
    long min_gap;
    mpq_class bound;  // epsilon * r / sigma
    bool pass;
};

GapReport gap_check(const SparsitySlice& slice, const mpq_class& epsilon,
                    unsigned sigma);

struct VariationReport {
    // max over slices and entry pairs m' > m of |w'| / ((m'-m)^c0 + |w|).
    mpq_class c_max;
    std::vector<std::pair<std::size_t, mpq_class>> per_slice;
    bool pass;
};

VariationReport variation_fit(const std::vector<SparsitySlice>& slices,
                              unsigned c0);

enum class CaseKind { Zero, Boundary, Undecided };

struct ClassifyResult {
    CaseKind kind;
    unsigned ell = 0;    // meaningful for Boundary
    bool step_up = false;  // which side {r theta} falls on
};

// Case split for w_{n,m}: Zero when the fractional parts keep all sigma+1
// floor increments equal, Boundary(l) at the unique crossing, Undecided on
// an exact tie.
ClassifyResult classify(long m, const DifferenceScheme& scheme, std::size_t n,
                        const RealScalar& theta, const RealScalar& alpha,
                        long p_max = kPrecisionCap);

struct ConsistencyReport {
    long checked = 0;
    std::vector<long> mismatches;
    std::vector<long> undecided;
    bool pass = false;
};

// classify against w_scan, position by position: Zero must scan to w = 0
// and Boundary(l) to the boundary polynomial value.
ConsistencyReport check_case_consistency(const DifferenceScheme& scheme,
                                         const FloorSeq& fs,
                                         const SparsitySlice& slice);

struct BoundaryFitReport {
    unsigned M;
    std::size_t count;
    mpq_class eps1, eps2;  // min and max of |w| / m^{sigma-2}
    bool pass;
};

BoundaryFitReport boundary_fit(const std::vector<SparsitySlice>& slices,
                               unsigned sigma, unsigned M = 1);

struct DioReport {
    mpz_class r;
    mpq_class q_bound;  // epsilon * r / sigma
    std::vector<mpz_class> qualifying;
    std::vector<mpz_class> violations;
    bool pass;
};

// Exhaustive check over 0 < q < r: ||q theta|| < sigma ||r theta|| forces
// q >= epsilon r / sigma.
DioReport dio_check(const RealScalar& theta, const mpz_class& r,
                    const mpq_class& epsilon, unsigned sigma);
DioReport dio_check(const RealScalar& theta, const IndexSelection& sel,
                    std::size_t n, unsigned sigma);

}  // namespace hmlab
