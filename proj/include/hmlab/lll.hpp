#pragma once

#include <gmpxx.h>

#include <vector>

namespace hmlab {

// In-place lattice reduction with the classic 3/4 parameter, exact rational
// Gram-Schmidt throughout.  Rows are the basis vectors.
void lll_reduce(std::vector<std::vector<mpz_class>>& basis);

// floor(x + 1/2) on exact rationals.
mpz_class round_nearest(const mpq_class& x);

}  // namespace hmlab
