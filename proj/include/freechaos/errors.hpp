#pragma once

#include <stdexcept>
#include <string>

namespace freechaos {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside a documented enumeration/size bound.
struct BoundsError : Error {
    using Error::Error;
};

// Mismatched tensor orders/dimensions or invalid contraction depth.
struct ShapeError : Error {
    using Error::Error;
};

// Parameter outside the mathematical domain (e.g. rate <= 0, odd order).
struct DomainError : Error {
    using Error::Error;
};

// A Fock-space operation would silently lose amplitude that still matters.
struct CapacityError : Error {
    using Error::Error;
};

// A contraction sequence was passed to an operation for a different class.
struct ClassificationError : Error {
    using Error::Error;
};

// A kernel family drifted away from its prescribed norm.
struct NormalizationError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, int line_no)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    int line;
};

// Adaptive refinement failed to reach the requested tolerance.  Carries the
// best estimate and the error bound actually achieved.
struct QuadratureError : Error {
    QuadratureError(const std::string& msg, double est, double bound)
        : Error(msg + " (estimate=" + std::to_string(est) +
                ", error_bound=" + std::to_string(bound) + ")"),
          estimate(est), error_bound(bound) {}
    double estimate;
    double error_bound;
};

}  // namespace freechaos
