#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>

#include "hmlab/dyadic.hpp"
#include "hmlab/quadratic.hpp"

namespace hmlab {

// Adaptive-precision real: a generator mapping precision p to an enclosure
// of width <= 2^-p.  Results are cached and intersected so the sequence of
// returned enclosures is nested even when the generator itself is sloppy
// about monotonicity.
class Stream {
  public:
    using Gen = std::function<Enclosure(long)>;
    explicit Stream(Gen gen, std::string label = "stream");

    Enclosure at(long p) const;
    const std::string& label() const { return label_; }

  private:
    struct State {
        std::mutex mu;
        std::optional<Enclosure> tightest;
    };
    Gen gen_;
    std::string label_;
    std::shared_ptr<State> state_;
};

enum class ScalarKind { rational, quadratic, stream };

// theta, alpha, beta all live here: exact field element when possible,
// enclosure stream otherwise.
class RealScalar {
  public:
    RealScalar() : v_(Quadratic()) {}
    RealScalar(long v) : v_(Quadratic(v)) {}
    RealScalar(mpq_class q) : v_(Quadratic(std::move(q))) {}
    RealScalar(Quadratic q) : v_(std::move(q)) {}
    RealScalar(Stream s) : v_(std::move(s)) {}

    ScalarKind kind() const;
    bool exact() const { return std::holds_alternative<Quadratic>(v_); }
    const Quadratic& field_value() const;
    const Stream& stream() const;

    // Enclosure of width <= 2^-p (0 when the value is exactly dyadic).
    Enclosure refine(long p) const;
    double to_double() const { return refine(64).mid().to_double(); }
    std::string str() const;

  private:
    std::variant<Quadratic, Stream> v_;
};

inline constexpr long kPrecisionCap = 4096;

// Exact integer part of m*theta + alpha.  Field-valued inputs are decided
// by exact arithmetic; streams by refinement up to p_max bits.  Throws
// PrecisionExhausted when the enclosure still straddles an integer at the
// cap, which is also how an exactly-integer value surfaces.
mpz_class floor_linear(const mpz_class& m, const RealScalar& theta,
                       const RealScalar& alpha, long p_max = kPrecisionCap);

enum class Ordering { Less, Greater, Undecided };

// Position of {m*theta + alpha} + {t} relative to 1.  An exact tie reports
// Undecided, matching how stream inputs behave when the sum sits on 1.
Ordering frac_condition(const mpz_class& m, const RealScalar& theta,
                        const RealScalar& alpha, const RealScalar& t,
                        long p_max = kPrecisionCap);

// CLI literals: "rat:p/q", "quad:a,b,d" for a+b*sqrt(d), "dec:<digits>"
// (exact rational).  Anything else raises ValueError.
RealScalar parse_scalar(const std::string& text);
// Same grammar, restricted to alternatives with exact field arithmetic.
Quadratic parse_field(const std::string& text);
mpq_class parse_rational(const std::string& text);

}  // namespace hmlab
