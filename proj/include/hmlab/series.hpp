#pragma once

#include <optional>

#include "hmlab/floorseq.hpp"
#include "hmlab/polynomial.hpp"
#include "hmlab/quadratic.hpp"
#include "hmlab/scalar.hpp"

namespace hmlab {

// Parameters of F = sum_{m>=0} f(floor(m*theta + alpha)) * beta^(-m).
struct SeriesSpec {
    IntPolynomial f;
    RealScalar theta;
    RealScalar alpha;
    Quadratic beta;

    SeriesSpec(IntPolynomial f_, RealScalar theta_, RealScalar alpha_,
               Quadratic beta_);
};

struct SeriesValue {
    Enclosure value;
    long tail_m;  // last index summed exactly; the rest is bounded away
};

// Certified enclosure of the series, width <= 2^-p.
SeriesValue eval_series(const SeriesSpec& spec, long p);

// The same evaluator packaged as a refinable scalar.
Stream series_stream(const SeriesSpec& spec);

// Upper bound on sum_{m>M} C*(m+offset)^D * t^m for 0 < t < 1 via the ratio
// test; nullopt while the step ratio at M has not yet dropped below 1.
std::optional<Quadratic> polynomial_geometric_tail(const mpz_class& C,
                                                   unsigned D, long offset,
                                                   const Quadratic& t, long M);

}  // namespace hmlab
