#pragma once

#include <stdexcept>
#include <string>

namespace hmlab {

// Raised when an enclosure refinement hits its precision cap before the
// question (a floor, a comparison) becomes decidable.  The value may
// genuinely sit on the boundary; callers decide policy.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what)
        : std::runtime_error(what) {}
};

struct InsufficientQuotients : std::runtime_error {
    explicit InsufficientQuotients(const std::string& what)
        : std::runtime_error(what) {}
};

struct WindowTooSmall : std::runtime_error {
    explicit WindowTooSmall(const std::string& what)
        : std::runtime_error(what) {}
};

struct UnsupportedField : std::runtime_error {
    explicit UnsupportedField(const std::string& what)
        : std::runtime_error(what) {}
};

// Height-1 base makes the gap criterion's hypothesis unusable.
struct HeightOne : std::runtime_error {
    explicit HeightOne(const std::string& what)
        : std::runtime_error(what) {}
};

struct PrecisionTooLow : std::runtime_error {
    explicit PrecisionTooLow(const std::string& what)
        : std::runtime_error(what) {}
};

struct DivergentSpec : std::runtime_error {
    explicit DivergentSpec(const std::string& what)
        : std::runtime_error(what) {}
};

// Malformed scalar literals and other bad CLI values.
struct ValueError : std::invalid_argument {
    explicit ValueError(const std::string& what)
        : std::invalid_argument(what) {}
};

}  // namespace hmlab
