#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hmlab/scalar.hpp"

namespace hmlab {

struct PeriodicTail {
    std::size_t start;
    std::size_t period;
};

// Simple continued fraction [a_0; a_1, ..., a_N] of a real in (0,1), so
// a_0 = 0 and a_i >= 1 for i >= 1.
class ContinuedFraction {
  public:
    ContinuedFraction(std::vector<mpz_class> quotients, RealScalar source,
                      std::optional<PeriodicTail> tail);

    const std::vector<mpz_class>& quotients() const { return quotients_; }
    const mpz_class& at(std::size_t i) const { return quotients_.at(i); }
    // Index of the last stored quotient.
    std::size_t last_index() const { return quotients_.size() - 1; }
    const RealScalar& source() const { return source_; }
    const std::optional<PeriodicTail>& periodic_tail() const { return tail_; }

  private:
    std::vector<mpz_class> quotients_;
    RealScalar source_;
    std::optional<PeriodicTail> tail_;
};

// Expansion to a_0..a_N.  Quadratic sources run on exact field arithmetic
// and get their periodic tail detected by complete-quotient repetition;
// streams refine until every quotient is decided or the cap is hit.
ContinuedFraction expand(const RealScalar& theta, std::size_t N,
                         long p_max = kPrecisionCap);

struct ConvergentRow {
    std::size_t n;
    mpz_class a, p, q;
};

class ConvergentTable {
  public:
    explicit ConvergentTable(const ContinuedFraction& cf);

    const std::vector<ConvergentRow>& rows() const { return rows_; }
    const ConvergentRow& row(std::size_t n) const { return rows_.at(n); }
    std::size_t size() const { return rows_.size(); }

  private:
    std::vector<ConvergentRow> rows_;
};

struct ApproxBoundsReport {
    std::size_t n;
    // 1/((a_{n+1}+2) q_n) and 1/(a_{n+1} q_n).
    mpq_class lower, upper;
    // |q_n theta - p_n|, certified.
    Enclosure value;
    bool pass;
};

ApproxBoundsReport check_approx_bounds(const ContinuedFraction& cf,
                                       const ConvergentTable& table,
                                       std::size_t n,
                                       long p_max = kPrecisionCap);

struct BestApproxReport {
    mpz_class Q;
    std::vector<mpz_class> best_q;
    std::vector<mpz_class> expected_q;
    bool pass;
};

// Brute-force scan of ||q theta|| for 1 <= q <= Q: the strict records must
// be exactly the convergent denominators.
BestApproxReport verify_best_approx(const RealScalar& theta,
                                    const ConvergentTable& table,
                                    const mpz_class& Q,
                                    long p_max = kPrecisionCap);

enum class SelectionMode { Bounded, Unbounded, AutoQuadratic };
enum class Parity { Even, Odd };

struct IndexSelection {
    SelectionMode mode;  // resolved: Bounded or Unbounded
    Parity parity;
    std::vector<std::size_t> indices;  // l_1 < l_2 < ...
    std::vector<mpz_class> shifts;     // r_n = q_{l_n}
    // min over selected n and m <= l_n of a_{l_n+1}/(a_{m+1}+2), scoped to
    // this window of quotients.
    mpq_class epsilon;
};

IndexSelection select_indices(const ContinuedFraction& cf, SelectionMode mode,
                              std::size_t count);

}  // namespace hmlab
