#pragma once

#include <gmpxx.h>

#include <vector>

#include "hmlab/dyadic.hpp"

namespace hmlab {

enum class RelationOutcome { RelationFound, NoRelationFound };

// Search result for integer coefficients c_0..c_D with |c_i| <= H and
// sum c_i x^i = 0.  A found relation carries a residual enclosure that
// contains zero; a negative answer is certified through the reduced
// lattice's shortest vector.
struct RelationReport {
    unsigned degree = 0;
    mpz_class height;
    long precision = 0;
    RelationOutcome outcome = RelationOutcome::NoRelationFound;
    std::vector<mpz_class> coeffs;  // constant term first, gcd one
    Enclosure residual;
    mpq_class threshold;            // acceptance cutoff on |sum c_i x~^i|
    mpq_class exclusion_bound_sq;   // 2^D * B^2
    mpq_class shortest_norm_sq;     // |b_1|^2 after reduction
};

RelationReport integer_relation(const Enclosure& x, unsigned degree,
                                const mpz_class& height, long p);

}  // namespace hmlab
